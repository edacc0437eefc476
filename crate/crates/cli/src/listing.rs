//! Text listings in the calculator's session format.

use std::fmt::Write;

use dtower_core::KnotComplex;

/// One `[key]succ,succ,` line per generator, in storage order.
pub fn adjacency(c: &KnotComplex) -> String {
    let gens = c.generators();
    let mut out = String::new();
    for (p, g) in gens.iter().enumerate() {
        let _ = write!(out, "[{}]", g.id);
        for &t in c.targets(p) {
            let _ = write!(out, "{},", gens[t].id);
        }
        out.push('\n');
    }
    out
}

/// One `F(key) = (i,j)` line per generator.
pub fn bifiltrations(c: &KnotComplex) -> String {
    c.generators().iter().map(|g| format!("F({}) = ({},{})\n", g.id, g.filt.i, g.filt.j)).collect()
}

pub fn d_lines(d_plus: i64, d_minus: i64) -> String {
    format!("d(S^3_{{+1}}(K)) = {d_plus}\nd(S^3_{{-1}}(K)) = {d_minus}\n")
}
