//! Brute-force oracles for graded dimensions and Betti numbers.
//!
//! Everything here is deliberately written from scratch: raw exponent
//! vectors, spans of generator multiples over the free polynomial ring,
//! and a plain Gauss elimination. No Groebner bases, no normal forms, no
//! code shared with the crate's computation path.

pub type Exp = Vec<u16>;
/// term list: (exponent vector, coefficient)
pub type RawPoly = Vec<(Exp, u32)>;

pub fn raw_var(i: usize, n: usize) -> RawPoly {
    let mut e = vec![0u16; n];
    e[i] = 1;
    vec![(e, 1)]
}

pub fn raw_mono(exps: &[u16], c: u32) -> RawPoly {
    vec![(exps.to_vec(), c)]
}

fn exp_mul(a: &Exp, b: &Exp) -> Exp {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn exp_degree(a: &Exp) -> u32 {
    a.iter().map(|&x| x as u32).sum()
}

/// All exponent vectors of the given total degree, in a fixed (lex) order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Exp> {
    fn rec(n: usize, d: u32, acc: &mut Exp, out: &mut Vec<Exp>) {
        if n == 1 {
            acc.push(d as u16);
            out.push(acc.clone());
            acc.pop();
            return;
        }
        for e in 0..=d {
            acc.push(e as u16);
            rec(n - 1, d - e, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

/// Plain row reduction; returns the rank.
pub fn raw_rank(p: u64, mut rows: Vec<Vec<u32>>) -> usize {
    let width = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = mod_inv(rows[rank][col] as u64, p);
        for c in 0..width {
            rows[rank][c] = ((rows[rank][c] as u64 * inv) % p) as u32;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col] as u64;
                for c in 0..width {
                    let v = (rows[r][c] as u64 + p - (f * rows[rank][c] as u64) % p) % p;
                    rows[r][c] = v as u32;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Degree-`d` dimension of `k[x_1..x_n]/I` from raw spans of multiples of
/// the ideal generators.
pub fn ring_dim(p: u64, n: usize, ideal: &[RawPoly], d: u32) -> usize {
    let ambient = monomials_of_degree(n, d);
    let index = |e: &Exp| ambient.iter().position(|m| m == e).unwrap();
    let mut rows = Vec::new();
    for g in ideal {
        let gdeg = exp_degree(&g[0].0);
        if gdeg > d {
            continue;
        }
        for m in monomials_of_degree(n, d - gdeg) {
            let mut row = vec![0u32; ambient.len()];
            for (e, c) in g {
                let idx = index(&exp_mul(e, &m));
                row[idx] = ((row[idx] as u64 + *c as u64) % p) as u32;
            }
            rows.push(row);
        }
    }
    ambient.len() - raw_rank(p, rows)
}

/// Degree-`d` dimension of the cokernel of a presentation matrix over
/// `k[x]/I`, computed over the free polynomial ring by adjoining the ideal
/// multiples of every ambient component. `target_shifts[i]` is the degree
/// of generator `i`; `columns[l]` is a homogeneous column of degree
/// `col_degrees[l]` with one raw polynomial per generator.
pub fn module_dim(
    p: u64,
    n: usize,
    ideal: &[RawPoly],
    target_shifts: &[i64],
    col_degrees: &[i64],
    columns: &[Vec<RawPoly>],
    d: i64,
) -> usize {
    // ambient basis: (component, monomial of degree d - shift)
    let mut offsets = Vec::new();
    let mut ambient: Vec<(usize, Exp)> = Vec::new();
    for (i, &s) in target_shifts.iter().enumerate() {
        offsets.push(ambient.len());
        if d >= s {
            for m in monomials_of_degree(n, (d - s) as u32) {
                ambient.push((i, m));
            }
        }
    }
    if ambient.is_empty() {
        return 0;
    }
    let index = |comp: usize, e: &Exp| -> usize {
        let local = monomials_of_degree(n, exp_degree(e))
            .iter()
            .position(|m| m == e)
            .unwrap();
        offsets[comp] + local
    };
    let mut rows = Vec::new();
    // ideal multiples per component
    for (i, &s) in target_shifts.iter().enumerate() {
        for g in ideal {
            let gdeg = exp_degree(&g[0].0) as i64;
            if d - s - gdeg < 0 {
                continue;
            }
            for m in monomials_of_degree(n, (d - s - gdeg) as u32) {
                let mut row = vec![0u32; ambient.len()];
                for (e, c) in g {
                    let idx = index(i, &exp_mul(e, &m));
                    row[idx] = ((row[idx] as u64 + *c as u64) % p) as u32;
                }
                rows.push(row);
            }
        }
    }
    // presentation-column multiples
    for (l, col) in columns.iter().enumerate() {
        let cdeg = col_degrees[l];
        if d < cdeg {
            continue;
        }
        for m in monomials_of_degree(n, (d - cdeg) as u32) {
            let mut row = vec![0u32; ambient.len()];
            for (i, entry) in col.iter().enumerate() {
                for (e, c) in entry {
                    let idx = index(i, &exp_mul(e, &m));
                    row[idx] = ((row[idx] as u64 + *c as u64) % p) as u32;
                }
            }
            rows.push(row);
        }
    }
    ambient.len() - raw_rank(p, rows)
}

// ---------------------------------------------------------------------
// Minimal resolutions over quotients by *monomial* ideals. Normal forms
// are just divisibility filters, so this stays independent of the crate.
// ---------------------------------------------------------------------

/// A module element over the monomial quotient: one term list per
/// component, all monomials kept standard (not divisible by ideal gens).
type Col = Vec<RawPoly>;

pub struct MonomialRingOracle {
    pub p: u64,
    pub n: usize,
    /// monomial ideal generators
    pub ideal: Vec<Exp>,
}

impl MonomialRingOracle {
    fn is_standard(&self, e: &Exp) -> bool {
        !self
            .ideal
            .iter()
            .any(|g| g.iter().zip(e).all(|(a, b)| a <= b))
    }

    fn std_monomials(&self, d: i64) -> Vec<Exp> {
        if d < 0 {
            return Vec::new();
        }
        monomials_of_degree(self.n, d as u32)
            .into_iter()
            .filter(|e| self.is_standard(e))
            .collect()
    }

    fn normalize(&self, poly: &RawPoly) -> RawPoly {
        let mut out: Vec<(Exp, u32)> = Vec::new();
        for (e, c) in poly {
            if !self.is_standard(e) || *c == 0 {
                continue;
            }
            match out.iter_mut().find(|(f, _)| f == e) {
                Some((_, acc)) => *acc = ((*acc as u64 + *c as u64) % self.p) as u32,
                None => out.push((e.clone(), *c % self.p as u32)),
            }
        }
        out.retain(|(_, c)| *c != 0);
        out
    }

    fn mul_mono(&self, poly: &RawPoly, m: &Exp) -> RawPoly {
        let shifted: RawPoly = poly
            .iter()
            .map(|(e, c)| (exp_mul(e, m), *c))
            .collect();
        self.normalize(&shifted)
    }

    fn coords(&self, shifts: &[i64], d: i64, col: &Col) -> Vec<u32> {
        let mut v = Vec::new();
        for (i, &s) in shifts.iter().enumerate() {
            let basis = self.std_monomials(d - s);
            let mut block = vec![0u32; basis.len()];
            for (e, c) in &self.normalize(&col[i]) {
                let idx = basis.iter().position(|m| m == e).expect("standard monomial");
                block[idx] = *c;
            }
            v.extend(block);
        }
        v
    }

    fn from_coords(&self, shifts: &[i64], d: i64, coords: &[u32]) -> Col {
        let mut col: Col = vec![Vec::new(); shifts.len()];
        let mut pos = 0;
        for (i, &s) in shifts.iter().enumerate() {
            for m in self.std_monomials(d - s) {
                if coords[pos] != 0 {
                    col[i].push((m.clone(), coords[pos]));
                }
                pos += 1;
            }
        }
        col
    }

    fn free_dim(&self, shifts: &[i64], d: i64) -> usize {
        shifts.iter().map(|&s| self.std_monomials(d - s).len()).sum()
    }

    /// Kernel basis of the degreewise map of a presentation matrix.
    fn kernel_basis_at(
        &self,
        src_shifts: &[i64],
        tgt_shifts: &[i64],
        cols: &[Col],
        d: i64,
    ) -> Vec<Vec<u32>> {
        // build the matrix columnwise: images of (component j, monomial m)
        let mut mat_cols: Vec<Vec<u32>> = Vec::new();
        for (j, &s) in src_shifts.iter().enumerate() {
            for m in self.std_monomials(d - s) {
                let image: Col = cols[j].iter().map(|poly| self.mul_mono(poly, &m)).collect();
                mat_cols.push(self.coords(tgt_shifts, d, &image));
            }
        }
        let rows_n = self.free_dim(tgt_shifts, d);
        let cols_n = mat_cols.len();
        // kernel by augmenting with an identity block and reducing rows
        // (each row = one source basis vector with its image)
        let mut rows: Vec<Vec<u32>> = (0..cols_n)
            .map(|j| {
                let mut r = vec![0u32; rows_n + cols_n];
                for (i, &v) in mat_cols[j].iter().enumerate() {
                    r[i] = v;
                }
                r[rows_n + j] = 1;
                r
            })
            .collect();
        // eliminate on the image part only
        let mut rank = 0usize;
        for col in 0..rows_n {
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
                continue;
            };
            rows.swap(rank, pivot);
            let inv = mod_inv(rows[rank][col] as u64, self.p);
            for c in 0..rows[rank].len() {
                rows[rank][c] = ((rows[rank][c] as u64 * inv) % self.p) as u32;
            }
            for r in 0..rows.len() {
                if r != rank && rows[r][col] != 0 {
                    let f = rows[r][col] as u64;
                    for c in 0..rows[r].len() {
                        let v =
                            (rows[r][c] as u64 + self.p - (f * rows[rank][c] as u64) % self.p)
                                % self.p;
                        rows[r][c] = v as u32;
                    }
                }
            }
            rank += 1;
        }
        rows[rank..]
            .iter()
            .map(|r| r[rows_n..].to_vec())
            .collect()
    }

    /// Betti numbers of the cokernel of the given presentation, by
    /// resolving with degreewise kernels and minimal generator selection.
    pub fn betti(
        &self,
        mut src_shifts: Vec<i64>,
        tgt_shifts: Vec<i64>,
        mut cols: Vec<Col>,
        steps: usize,
        max_degree: i64,
    ) -> Vec<usize> {
        let mut betti = vec![tgt_shifts.len()];
        let mut current_tgt = tgt_shifts;
        for _ in 0..steps {
            betti.push(src_shifts.len());
            // compute the kernel of the current map, degree by degree
            let mut new_shifts = Vec::new();
            let mut new_cols: Vec<Col> = Vec::new();
            let lo = src_shifts.iter().copied().min().unwrap_or(0);
            let mut prev_kernel: Vec<Vec<u32>> = Vec::new();
            let mut prev_deg = lo - 1;
            for d in lo..=max_degree {
                let kernel = self.kernel_basis_at(&src_shifts, &current_tgt, &cols, d);
                // span of m * previous kernel inside this degree
                let mut span_rows: Vec<Vec<u32>> = Vec::new();
                for v in &prev_kernel {
                    let col = self.from_coords(&src_shifts, prev_deg, v);
                    for var in 0..self.n {
                        let mut e = vec![0u16; self.n];
                        e[var] = 1;
                        let mult: Col =
                            col.iter().map(|poly| self.mul_mono(poly, &e)).collect();
                        span_rows.push(self.coords(&src_shifts, d, &mult));
                    }
                }
                let base_rank = raw_rank(self.p, span_rows.clone());
                for v in &kernel {
                    let mut candidate = span_rows.clone();
                    candidate.push(v.clone());
                    if raw_rank(self.p, candidate.clone()) > raw_rank(self.p, span_rows.clone()) {
                        span_rows = candidate;
                        new_shifts.push(d);
                        new_cols.push(self.from_coords(&src_shifts, d, v));
                    }
                }
                let _ = base_rank;
                prev_kernel = kernel;
                prev_deg = d;
            }
            current_tgt = src_shifts;
            src_shifts = new_shifts;
            cols = new_cols;
        }
        betti.truncate(steps + 1);
        betti
    }
}
