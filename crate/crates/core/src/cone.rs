//! The integer surgery mapping cone `X⁺(±1)` for the genus-g Borromean knot.
//!
//! The knot complex is `Λ* H¹(Σ_g) ⊗ F2[U, U^-1]` with zero differential: the
//! monomial `ω ⊗ U^-i` (ω a subset of the `2g` symbols) sits at
//! `(i, j) = (i, i + |ω| - g)` in grading `i + j`. The cone is
//! `⊕ A⁺_s → ⊕ B⁺_s` with `A⁺_s = C{i >= 0 or j >= s}`, `B⁺_s = C{i >= 0}`
//! and `D(a_s) = v_s(a_s) + h_s(a_s) ∈ B_s ⊕ B_{s+n}`.
//!
//! `v_s` projects to `{i >= 0}`; `h_s` projects to `{j >= s}`, multiplies by
//! `U^s` and flips `(i, j) -> (j, i)`, identifying `Λ^k` with `Λ^(2g-k)` by
//! taking complements.
//!
//! Truncating to `A_s` for `|s| <= b` (and the matching `B_s`) removes an
//! acyclic subcomplex and an acyclic quotient, so the homology is exact in
//! every grading; the tower count is still checked at `b` and `b + 2`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::f2::{BitVec, ColumnReduction, F2Matrix, SpanBasis};

/// Largest genus accepted by [`verify_borromean`] unless configured otherwise.
pub const DEFAULT_MAX_GENUS: u32 = 3;

pub fn binomial(n: u64, k: i64) -> u64 {
    if k < 0 || k as u64 > n {
        return 0;
    }
    let k = (k as u64).min(n - k as u64);
    (0..k).fold(1, |acc, t| acc * (n - t) / (t + 1))
}

/// `Λ* H¹(Σ_g) ⊗ F2[U, U^-1]` with its bifiltration and zero differential.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BorromeanComplex {
    g: u32,
}

impl BorromeanComplex {
    pub fn new(g: u32) -> Result<Self> {
        if g == 0 || g > 16 {
            return Err(Error::Precondition(format!("genus {g} must lie in 1..=16")));
        }
        Ok(Self { g })
    }

    pub fn genus(&self) -> u32 {
        self.g
    }

    pub fn symbols(&self) -> usize {
        2 * self.g as usize
    }

    /// Exterior monomials of degree `k`, as subset bitmasks.
    pub fn monomials(&self, k: i64) -> Vec<u32> {
        (0u32..1 << self.symbols()).filter(|m| i64::from(m.count_ones()) == k).collect()
    }

    /// Monomials in the `(i, j)` box: `Λ^(g - i + j)`.
    pub fn box_basis(&self, i: i64, j: i64) -> Vec<u32> {
        self.monomials(i64::from(self.g) - i + j)
    }

    pub fn box_rank(&self, i: i64, j: i64) -> usize {
        binomial(2 * u64::from(self.g), i64::from(self.g) - i + j) as usize
    }

    pub fn box_grading(&self, i: i64, j: i64) -> i64 {
        i + j
    }

    /// Symbols `a1, b1, ..., ag, bg` joined by `^`; `1` for the empty monomial.
    pub fn monomial_name(&self, omega: u32) -> String {
        if omega == 0 {
            return "1".into();
        }
        (0..self.symbols())
            .filter(|&t| omega >> t & 1 == 1)
            .map(|t| format!("{}{}", if t % 2 == 0 { 'a' } else { 'b' }, t / 2 + 1))
            .collect::<Vec<_>>()
            .join("^")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Part {
    A,
    B,
}

/// `omega ⊗ U^-i` in the summand `A_s` or `B_s`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ConeCell {
    pub part: Part,
    pub s: i64,
    pub omega: u32,
    pub i: i64,
}

impl fmt::Display for ConeCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}[{:#b}⊗U^{}]", self.part, self.s, self.omega, -self.i)
    }
}

#[derive(Clone, Debug)]
struct Level {
    a: Vec<ConeCell>,
    b: Vec<ConeCell>,
    a_index: HashMap<ConeCell, usize>,
    b_index: HashMap<ConeCell, usize>,
}

/// A finite range of gradings of the truncated cone.
#[derive(Clone, Debug)]
pub struct ConeComplex {
    pub n: i64,
    pub g: u32,
    pub b: i64,
    lo: i64,
    hi: i64,
    levels: BTreeMap<i64, Level>,
}

impl ConeComplex {
    fn gg(&self) -> i64 {
        i64::from(self.g)
    }

    pub fn a_range(&self) -> (i64, i64) {
        (-self.b, self.b)
    }

    pub fn b_range(&self) -> (i64, i64) {
        if self.n > 0 {
            (-self.b + 1, self.b)
        } else {
            (-self.b - 1, self.b)
        }
    }

    /// Grading shift of `B_s` relative to the knot complex grading.
    pub fn b_shift(&self, s: i64) -> i64 {
        if self.n > 0 {
            s * (s - 1) - 1
        } else {
            -s * (s + 1)
        }
    }

    pub fn j(&self, c: &ConeCell) -> i64 {
        c.i + i64::from(c.omega.count_ones()) - self.gg()
    }

    pub fn grading(&self, c: &ConeCell) -> i64 {
        let base = 2 * c.i + i64::from(c.omega.count_ones()) - self.gg() + self.b_shift(c.s);
        match c.part {
            Part::A => base + 1,
            Part::B => base,
        }
    }

    fn in_region(&self, c: &ConeCell) -> bool {
        match c.part {
            Part::A => c.i >= 0 || self.j(c) >= c.s,
            Part::B => c.i >= 0,
        }
    }

    fn enumerate(&self, part: Part, k: i64) -> Vec<ConeCell> {
        let (lo, hi) = match part {
            Part::A => self.a_range(),
            Part::B => self.b_range(),
        };
        let offset = if part == Part::A { 1 } else { 0 };
        let mut out = Vec::new();
        for s in lo..=hi {
            for omega in 0u32..1 << (2 * self.g) {
                let twice_i = k - offset - self.b_shift(s) - i64::from(omega.count_ones()) + self.gg();
                if twice_i.rem_euclid(2) != 0 {
                    continue;
                }
                let c = ConeCell { part, s, omega, i: twice_i / 2 };
                if self.in_region(&c) {
                    out.push(c);
                }
            }
        }
        out
    }

    pub fn v(&self, c: &ConeCell) -> Option<ConeCell> {
        (c.i >= 0).then_some(ConeCell { part: Part::B, ..*c })
    }

    pub fn h(&self, c: &ConeCell) -> Option<ConeCell> {
        let j = self.j(c);
        if j < c.s {
            return None;
        }
        let full = (1u32 << (2 * self.g)) - 1;
        Some(ConeCell { part: Part::B, s: c.s + self.n, omega: full & !c.omega, i: j - c.s })
    }

    /// `U^m` on a cell; `None` once it leaves its region.
    pub fn u_power(&self, c: &ConeCell, m: i64) -> Option<ConeCell> {
        let out = ConeCell { i: c.i - m, ..*c };
        self.in_region(&out).then_some(out)
    }

    pub fn grading_range(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn cells(&self, part: Part, k: i64) -> &[ConeCell] {
        match (self.levels.get(&k), part) {
            (Some(l), Part::A) => &l.a,
            (Some(l), Part::B) => &l.b,
            (None, _) => &[],
        }
    }

    fn lookup(&self, c: &ConeCell) -> Option<usize> {
        let l = self.levels.get(&self.grading(c))?;
        match c.part {
            Part::A => l.a_index.get(c).copied(),
            Part::B => l.b_index.get(c).copied(),
        }
    }

    /// Boundary of `A_k`, columns over `B_{k-1}`.
    pub fn boundary_columns(&self, k: i64) -> Vec<BitVec> {
        let targets = self.cells(Part::B, k - 1);
        self.cells(Part::A, k)
            .iter()
            .map(|c| {
                let mut col = BitVec::zeros(targets.len());
                for t in [self.v(c), self.h(c)].into_iter().flatten() {
                    let in_range = (self.b_range().0..=self.b_range().1).contains(&t.s);
                    if in_range {
                        let p = self.lookup(&t).expect("image cell is enumerated");
                        col.flip(p);
                    }
                }
                col
            })
            .collect()
    }

    /// Checks that every component of `v` and `h` lowers the grading by one.
    pub fn check_degrees(&self) -> Result<()> {
        for l in self.levels.values() {
            for c in &l.a {
                for t in [self.v(c), self.h(c)].into_iter().flatten() {
                    if self.grading(&t) != self.grading(c) - 1 {
                        return Err(Error::Precondition(format!("map {c} -> {t} is not of degree -1")));
                    }
                }
            }
        }
        Ok(())
    }

    /// The whole truncated differential on the gradings built, with its basis.
    pub fn cone_boundary(&self) -> (Vec<ConeCell>, F2Matrix) {
        let basis: Vec<ConeCell> = self.levels.values().flat_map(|l| l.a.iter().chain(&l.b)).copied().collect();
        let index: HashMap<ConeCell, usize> = basis.iter().enumerate().map(|(p, c)| (*c, p)).collect();
        let mut m = F2Matrix::zeros(basis.len(), basis.len());
        for (p, c) in basis.iter().enumerate().filter(|(_, c)| c.part == Part::A) {
            for t in [self.v(c), self.h(c)].into_iter().flatten() {
                if let Some(&q) = index.get(&t) {
                    m.set(q, p, !m.get(q, p));
                }
            }
        }
        (basis, m)
    }

    fn apply_u(&self, part: Part, k: i64, v: &BitVec, m: i64) -> BitVec {
        let targets = self.cells(part, k - 2 * m);
        let mut out = BitVec::zeros(targets.len());
        for p in v.ones() {
            if let Some(t) = self.u_power(&self.cells(part, k)[p], m) {
                out.flip(self.lookup(&t).expect("U image is enumerated"));
            }
        }
        out
    }

    // ranks of U^m and U^(m+1) from grading `top` on ker D and on coker D
    fn ladder_ranks(&self, top: i64, m: i64) -> (usize, usize) {
        let kernel = ColumnReduction::new(&self.boundary_columns(top)).kernel();
        let ker_rank = |steps: i64| {
            let dim = self.cells(Part::A, top - 2 * steps).len();
            SpanBasis::from_vectors(
                dim,
                &kernel.iter().map(|v| self.apply_u(Part::A, top, v, steps)).collect::<Vec<_>>(),
            )
            .rank()
        };
        let coker_rank = |steps: i64| {
            let k = top - 2 * steps;
            let dim = self.cells(Part::B, k).len();
            let image = ColumnReduction::new(&self.boundary_columns(k + 1)).image();
            let mut span = SpanBasis::from_vectors(dim, &image);
            let base = span.rank();
            for p in 0..self.cells(Part::B, top).len() {
                let unit = BitVec::unit(self.cells(Part::B, top).len(), p);
                span.insert(self.apply_u(Part::B, top, &unit, steps));
            }
            span.rank() - base
        };
        (ker_rank(m) + coker_rank(m), ker_rank(m + 1) + coker_rank(m + 1))
    }

    /// Number of tower bottoms in grading `k`, detected with ladders of length `ladder`.
    pub fn bottoms(&self, k: i64, ladder: i64) -> usize {
        let (upper, lower) = self.ladder_ranks(k + 2 * ladder, ladder);
        upper - lower
    }
}

/// Builds gradings `lo..=hi` of the cone truncated at `b`.
pub fn build_cone(g: u32, n: i64, b: i64, lo: i64, hi: i64) -> Result<ConeComplex> {
    let bc = BorromeanComplex::new(g)?;
    if n != 1 && n != -1 {
        return Err(Error::Precondition(format!("surgery coefficient must be +1 or -1, got {n}")));
    }
    let min = i64::from(bc.genus()) + 2;
    if b < min {
        return Err(Error::TruncationTooSmall { b, min });
    }
    let mut cone = ConeComplex { n, g, b, lo, hi, levels: BTreeMap::new() };
    for k in lo..=hi {
        let a = cone.enumerate(Part::A, k);
        let bb = cone.enumerate(Part::B, k);
        let a_index = a.iter().enumerate().map(|(p, c)| (*c, p)).collect();
        let b_index = bb.iter().enumerate().map(|(p, c)| (*c, p)).collect();
        cone.levels.insert(k, Level { a, b: bb, a_index, b_index });
    }
    cone.check_degrees()?;
    Ok(cone)
}

/// Bottom grading -> number of towers.
pub type TowerMultiset = BTreeMap<i64, usize>;

/// Tower bottoms in gradings `-g-4..=g+4` of the cone truncated at `b`.
pub fn tower_multiset_at(g: u32, n: i64, b: i64, exec: Exec) -> Result<TowerMultiset> {
    let gg = i64::from(g);
    let (klo, khi) = (-gg - 4, gg + 4);
    let ladder = b;
    let cone = build_cone(g, n, b, klo - 3, khi + 2 * ladder + 3)?;
    let counts = exec.map((klo..=khi).collect(), |k| (k, cone.bottoms(k, ladder)));
    Ok(counts.into_iter().filter(|&(_, c)| c > 0).collect())
}

/// Tower multiset, required to agree at `b` and `b + 2`.
pub fn tower_multiset(g: u32, n: i64, b: i64, exec: Exec) -> Result<TowerMultiset> {
    let (first, second) = exec.join(|| tower_multiset_at(g, n, b, exec), || tower_multiset_at(g, n, b + 2, exec));
    let (first, second) = (first?, second?);
    if first != second {
        return Err(Error::Unstable { b });
    }
    Ok(first)
}

/// `C(2g, g)` at 0 and `2 C(2g, g - k)` at `-n k` for `k = 1..=g`.
pub fn expected_towers(g: u32, n: i64) -> TowerMultiset {
    let gg = i64::from(g);
    let two_g = 2 * u64::from(g);
    let mut out = BTreeMap::from([(0, binomial(two_g, gg) as usize)]);
    for k in 1..=gg {
        out.insert(-n * k, 2 * binomial(two_g, gg - k) as usize);
    }
    out
}

#[derive(Clone, Copy, Debug)]
pub struct BorromeanConfig {
    pub max_genus: u32,
    /// Truncation bound; defaults to `g + 2`.
    pub b: Option<i64>,
    pub exec: Exec,
}

impl Default for BorromeanConfig {
    fn default() -> Self {
        Self { max_genus: DEFAULT_MAX_GENUS, b: None, exec: Exec::default() }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BorromeanReport {
    pub g: u32,
    pub n: i64,
    pub b: i64,
    pub towers: TowerMultiset,
    pub expected: TowerMultiset,
    pub d_b: i64,
    pub expected_d_b: i64,
}

impl BorromeanReport {
    pub fn pass(&self) -> bool {
        self.towers == self.expected && self.d_b == self.expected_d_b
    }

    pub fn total(&self) -> usize {
        self.towers.values().sum()
    }
}

/// `{0:2, 1:2}`, ordered by absolute grading.
pub fn format_multiset(m: &TowerMultiset) -> String {
    let mut entries: Vec<(i64, usize)> = m.iter().map(|(&k, &c)| (k, c)).collect();
    entries.sort_by_key(|&(k, _)| (k.abs(), k));
    let body: Vec<String> = entries.iter().map(|(k, c)| format!("{k}:{c}")).collect();
    format!("{{{}}}", body.join(", "))
}

impl fmt::Display for BorromeanReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "towers: {}, d_b = {}, {}",
            format_multiset(&self.towers),
            self.d_b,
            if self.pass() { "PASS" } else { "FAIL" }
        )
    }
}

/// How `d_b` is read off the multiset.
pub const D_B_NOTE: &str = "d_b is the extreme tower bottom (maximum for n = -1, minimum for n = +1); \
the H_1 action on the cone homology is not computed";

pub fn verify_borromean(g: u32, n: i64) -> Result<BorromeanReport> {
    verify_borromean_with(g, n, &BorromeanConfig::default())
}

pub fn verify_borromean_with(g: u32, n: i64, cfg: &BorromeanConfig) -> Result<BorromeanReport> {
    if g == 0 || g > cfg.max_genus {
        return Err(Error::Precondition(format!("genus {g} must lie in 1..={}", cfg.max_genus)));
    }
    let b = cfg.b.unwrap_or(i64::from(g) + 2);
    let towers = tower_multiset(g, n, b, cfg.exec)?;
    let extreme = if n < 0 { towers.keys().next_back() } else { towers.keys().next() };
    let d_b = extreme.copied().ok_or(Error::NoTower)?;
    Ok(BorromeanReport { g, n, b, towers, expected: expected_towers(g, n), d_b, expected_d_b: -n * i64::from(g) })
}
