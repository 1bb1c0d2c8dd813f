//! Human-readable rendering, a pure function of the JSON document.

use serde_json::Value;

pub fn render_text(doc: &Value) -> String {
    let mut out = String::new();
    if let Some(cfg) = doc.get("config") {
        out.push_str(&format!(
            "config: D={} H={} seed={}\n",
            cfg["max_degree"], cfg["max_hdeg"], cfg["seed"]
        ));
    }
    let Some(records) = doc.get("records").and_then(|r| r.as_array()) else {
        return out;
    };
    for rec in records {
        out.push('\n');
        out.push_str(&format!("== {}\n", rec["command"].as_str().unwrap_or("?")));
        let payload = &rec["payload"];
        render_payload(payload, &mut out);
        if let Some(prov) = rec.get("provenance") {
            let mut flags = Vec::new();
            if prov["truncated"].as_bool() == Some(true) {
                flags.push("truncated".to_string());
            }
            if let Some(hit) = prov["cache_hit"].as_bool() {
                flags.push(format!("cache_hit={hit}"));
            }
            if !flags.is_empty() {
                out.push_str(&format!("   [{}]\n", flags.join(", ")));
            }
        }
    }
    out
}

fn render_payload(p: &Value, out: &mut String) {
    if let Some(betti) = p.get("betti").and_then(|b| b.as_array()) {
        let row: Vec<String> = betti.iter().map(|b| b.to_string()).collect();
        out.push_str(&format!("   betti: {}\n", row.join(" ")));
        return;
    }
    if let Some(entries) = p.get("entries").and_then(|e| e.as_array()) {
        let kind = p["kind"].as_str().unwrap_or("table");
        if entries.is_empty() {
            out.push_str(&format!("   {kind}: zero everywhere in the window\n"));
        } else {
            out.push_str(&format!("   {kind} (i, degree, dim):\n"));
            for e in entries {
                out.push_str(&format!("     {e}\n"));
            }
        }
        let idx = p.get("p_index").or_else(|| p.get("q_index"));
        if let Some(idx) = idx {
            out.push_str(&format!("   sup index: {idx}\n"));
        }
        return;
    }
    if let Some(found) = p.get("found") {
        if found.as_bool() == Some(true) {
            let cert = &p["certificate"];
            out.push_str(&format!(
                "   certificate: chain length {}, terminal pd {}, recheck {}\n",
                cert["chain_length"], cert["terminal_pd"], p["recheck"]
            ));
        } else {
            out.push_str(&format!(
                "   no certificate found: tried {} classes, best cx {}\n",
                p["classes_tried"], p["best_cx"]
            ));
        }
        return;
    }
    if let Some(d) = p.get("depth") {
        out.push_str(&format!(
            "   depth {} (ring dim {}), mcm: {}\n",
            d, p["ring_dim"], p["is_mcm"]
        ));
        return;
    }
    if let Some(period) = p.get("period") {
        if period.is_null() {
            out.push_str("   no period found\n");
        } else {
            out.push_str(&format!("   period {} (shift {})\n", period, p["shift"]));
        }
        return;
    }
    if p.get("k_hilbert").is_some() {
        out.push_str(&format!(
            "   K: gens {}, free: {}, SES verified: {}\n",
            p["k_gens"], p["k_is_free"], p["ses_verified"]
        ));
        return;
    }
    if p.get("c_hilbert").is_some() {
        out.push_str(&format!(
            "   MCM approximation: C depth {}, Y pd {}, iterations {}\n",
            p["c_depth"], p["y_pd"], p["iterations"]
        ));
        return;
    }
    out.push_str(&format!("   {p}\n"));
}
