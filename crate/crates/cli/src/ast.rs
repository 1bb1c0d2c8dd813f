//! Session AST and its canonical printer. Printing followed by parsing
//! reproduces the AST exactly, which the test suite pins down.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Session {
    pub items: Vec<Item>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    Ring(RingDecl),
    Module(ModuleDecl),
    Command(Command),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingDecl {
    pub name: String,
    pub char_p: u32,
    pub vars: Vec<String>,
    pub ideal: Vec<PolyExpr>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleDecl {
    pub name: String,
    pub matrix: Vec<Vec<PolyExpr>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Resolve { id: String, steps: usize },
    Betti { id: String },
    Ext { a: String, b: String },
    Tor { a: String, b: String },
    Pushout { id: String, deg: usize, class: Option<usize> },
    Certify { id: String },
    Mcm { id: String },
    Depth { id: String },
    Period { id: String },
}

/// A polynomial expression as written: signed terms with an optional
/// integer coefficient and explicit `*`-separated variable powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyExpr {
    pub terms: Vec<TermExpr>,
    /// source position of the first token (line, column), for diagnostics
    pub pos: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermExpr {
    pub negative: bool,
    pub coeff: Option<u64>,
    pub factors: Vec<(String, u32)>,
}

impl PolyExpr {
    pub fn print(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, t) in self.terms.iter().enumerate() {
            if i == 0 {
                if t.negative {
                    out.push('-');
                }
            } else if t.negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mut parts = Vec::new();
            if let Some(c) = t.coeff {
                parts.push(c.to_string());
            }
            for (v, e) in &t.factors {
                if *e == 1 {
                    parts.push(v.clone());
                } else {
                    parts.push(format!("{v}^{e}"));
                }
            }
            if parts.is_empty() {
                parts.push("1".to_string());
            }
            out.push_str(&parts.join("*"));
        }
        out
    }
}

pub fn print_session(s: &Session) -> String {
    let mut out = String::new();
    for item in &s.items {
        match item {
            Item::Ring(r) => {
                let gens: Vec<String> = r.ideal.iter().map(|p| p.print()).collect();
                out.push_str(&format!(
                    "ring {} = GF({})[{}] / <{}>;\n",
                    r.name,
                    r.char_p,
                    r.vars.join(","),
                    gens.join(",")
                ));
            }
            Item::Module(m) => {
                let rows: Vec<String> = m
                    .matrix
                    .iter()
                    .map(|row| {
                        let cells: Vec<String> = row.iter().map(|p| p.print()).collect();
                        format!("[{}]", cells.join(","))
                    })
                    .collect();
                out.push_str(&format!("module {} = coker [{}];\n", m.name, rows.join(",")));
            }
            Item::Command(c) => {
                let line = match c {
                    Command::Resolve { id, steps } => format!("resolve {id} to {steps}"),
                    Command::Betti { id } => format!("betti {id}"),
                    Command::Ext { a, b } => format!("ext {a} {b}"),
                    Command::Tor { a, b } => format!("tor {a} {b}"),
                    Command::Pushout { id, deg, class } => match class {
                        Some(j) => format!("pushout {id} deg {deg} class {j}"),
                        None => format!("pushout {id} deg {deg}"),
                    },
                    Command::Certify { id } => format!("certify {id}"),
                    Command::Mcm { id } => format!("mcm {id}"),
                    Command::Depth { id } => format!("depth {id}"),
                    Command::Period { id } => format!("period {id}"),
                };
                out.push_str(&line);
                out.push_str(";\n");
            }
        }
    }
    out
}

/// Echo of a single command, used in result records.
pub fn print_command(c: &Command) -> String {
    let session = Session {
        items: vec![Item::Command(c.clone())],
    };
    print_session(&session).trim_end_matches('\n').trim_end_matches(';').to_string()
}
