//! Knot complexes: finitely generated bifiltered complexes over F2[U, U^-1].
//!
//! A [`KnotComplex`] stores one generator per free F2[U, U^-1]-module basis
//! element together with its (i, j) bifiltration and an optional Maslov
//! grading. Arrows connect basis generators at U-power zero; the full complex
//! is the set of all U-translates, with `U . [x, i, j] = [x, i - 1, j - 1]`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Generator identifier. Tensor products produce structured pairs rather than
/// packed integers, so keys never overflow however many sums are taken.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum GenId {
    Atom(String),
    Pair(Box<GenId>, Box<GenId>),
}

impl GenId {
    pub fn atom(s: impl Into<String>) -> Self {
        GenId::Atom(s.into())
    }

    pub fn pair(a: GenId, b: GenId) -> Self {
        GenId::Pair(Box::new(a), Box::new(b))
    }

    fn is_valid_atom(s: &str) -> bool {
        !s.is_empty() && !s.chars().any(|c| c == '(' || c == ')' || c == ',' || c.is_whitespace())
    }
}

fn is_numeric(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

// Numeric atoms sort numerically ("2" < "10") and before non-numeric atoms;
// atoms sort before pairs; pairs sort lexicographically.
impl Ord for GenId {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (GenId::Atom(a), GenId::Atom(b)) => {
                let key = |s: &String| (!is_numeric(s), if is_numeric(s) { s.len() } else { 0 });
                key(a).cmp(&key(b)).then_with(|| a.cmp(b))
            }
            (GenId::Atom(_), GenId::Pair(..)) => Ordering::Less,
            (GenId::Pair(..), GenId::Atom(_)) => Ordering::Greater,
            (GenId::Pair(a1, b1), GenId::Pair(a2, b2)) => a1.cmp(a2).then_with(|| b1.cmp(b2)),
        }
    }
}

impl PartialOrd for GenId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenId::Atom(s) => f.write_str(s),
            GenId::Pair(a, b) => write!(f, "({a},{b})"),
        }
    }
}

impl FromStr for GenId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        fn parse(s: &str) -> Option<GenId> {
            if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
                let mut depth = 0usize;
                for (pos, c) in inner.char_indices() {
                    match c {
                        '(' => depth += 1,
                        ')' => depth = depth.checked_sub(1)?,
                        ',' if depth == 0 => {
                            let left = parse(&inner[..pos])?;
                            let right = parse(&inner[pos + 1..])?;
                            return Some(GenId::pair(left, right));
                        }
                        _ => {}
                    }
                }
                None
            } else if GenId::is_valid_atom(s) {
                Some(GenId::Atom(s.to_string()))
            } else {
                None
            }
        }
        parse(s).ok_or_else(|| Error::Parse(format!("malformed generator id {s:?}")))
    }
}

impl Serialize for GenId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GenId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Algebraic (`i`) and Alexander (`j`) filtration levels.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Bifiltration {
    pub i: i64,
    pub j: i64,
}

impl Bifiltration {
    pub const fn new(i: i64, j: i64) -> Self {
        Self { i, j }
    }

    /// Position of `U^k` applied to a generator at this position.
    pub const fn u_shift(self, k: i64) -> Self {
        Self { i: self.i - k, j: self.j - k }
    }

    pub const fn swap(self) -> Self {
        Self { i: self.j, j: self.i }
    }

    pub const fn neg(self) -> Self {
        Self { i: -self.i, j: -self.j }
    }
}

impl fmt::Display for Bifiltration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// `U^u_exp` applied to the basis generator `base`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GeneratorKey {
    pub base: GenId,
    pub u_exp: i64,
}

impl GeneratorKey {
    pub fn new(base: GenId, u_exp: i64) -> Self {
        Self { base, u_exp }
    }

    pub fn u_shift(&self, m: i64) -> Self {
        Self { base: self.base.clone(), u_exp: self.u_exp + m }
    }
}

impl fmt::Display for GeneratorKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.u_exp {
            0 => write!(f, "{}", self.base),
            1 => write!(f, "U*{}", self.base),
            k => write!(f, "U^{k}*{}", self.base),
        }
    }
}

/// F2-linear combination of U-translates of generators.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct ChainElement {
    terms: BTreeSet<GeneratorKey>,
}

impl ChainElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_keys(keys: impl IntoIterator<Item = GeneratorKey>) -> Self {
        let mut out = Self::zero();
        for k in keys {
            out.add_term(k);
        }
        out
    }

    /// Adds a term over F2: a repeated term cancels.
    pub fn add_term(&mut self, key: GeneratorKey) {
        if !self.terms.remove(&key) {
            self.terms.insert(key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &GeneratorKey> {
        self.terms.iter()
    }

    pub fn contains(&self, key: &GeneratorKey) -> bool {
        self.terms.contains(key)
    }

    /// Multiplies by `U^m`.
    pub fn u_shift(&self, m: i64) -> Self {
        Self { terms: self.terms.iter().map(|k| k.u_shift(m)).collect() }
    }

    pub fn retain(&mut self, f: impl FnMut(&GeneratorKey) -> bool) {
        self.terms.retain(f);
    }
}

impl std::ops::Add for &ChainElement {
    type Output = ChainElement;

    fn add(self, rhs: &ChainElement) -> ChainElement {
        ChainElement { terms: self.terms.symmetric_difference(&rhs.terms).cloned().collect() }
    }
}

impl fmt::Display for ChainElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Generator {
    pub id: GenId,
    pub filt: Bifiltration,
    pub grading: Option<i64>,
}

impl Generator {
    pub fn new(id: impl Into<String>, i: i64, j: i64) -> Self {
        Self { id: GenId::Atom(id.into()), filt: Bifiltration::new(i, j), grading: None }
    }

    pub fn with_grading(mut self, grading: i64) -> Self {
        self.grading = Some(grading);
        self
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ViolationKind {
    /// d^2 is nonzero on the listed generator; remaining ids are the odd-count targets.
    BoundarySquared,
    /// Arrow from the first id to the second raises a filtration coordinate.
    FiltrationIncrease,
    /// Arrow from the first id to the second does not drop the grading by one.
    GradingDrop,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Violation {
    pub kind: ViolationKind,
    pub generators: Vec<GenId>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.generators.iter().map(ToString::to_string).collect();
        match self.kind {
            ViolationKind::BoundarySquared => {
                write!(f, "d^2 != 0 at generator {} (hits {})", ids[0], ids[1..].join(", "))
            }
            ViolationKind::FiltrationIncrease => {
                write!(f, "arrow {} -> {} increases filtration", ids[0], ids[1])
            }
            ViolationKind::GradingDrop => {
                write!(f, "arrow {} -> {} does not drop grading by 1", ids[0], ids[1])
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ValidationReport {
    pub is_complex: bool,
    pub is_filtered: bool,
    pub grading_consistent: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.is_complex && self.is_filtered && self.grading_consistent
    }

    pub fn summary(&self) -> String {
        if self.violations.is_empty() {
            return "ok".to_string();
        }
        self.violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
    }
}

/// Generators sorted by (i, j, grading, id) and relabelled by position, with
/// arrows as sorted index pairs. Two complexes related by a relabelling that
/// preserves that order compare equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CanonicalForm {
    pub nodes: Vec<(i64, i64, Option<i64>)>,
    pub arrows: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct KnotComplex {
    name: String,
    generators: Vec<Generator>,
    index: HashMap<GenId, usize>,
    // targets[src] is sorted by generator index
    targets: Vec<Vec<usize>>,
}

impl PartialEq for KnotComplex {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.generators == other.generators && self.targets == other.targets
    }
}

impl Eq for KnotComplex {}

const MIRROR_PREFIX: &str = "mirror(";

impl KnotComplex {
    /// Builds a complex. Ids must be unique and every arrow endpoint declared.
    pub fn new(
        name: impl Into<String>,
        generators: Vec<Generator>,
        arrows: impl IntoIterator<Item = (GenId, GenId)>,
    ) -> Result<Self> {
        let mut index = HashMap::with_capacity(generators.len());
        for (pos, g) in generators.iter().enumerate() {
            if index.insert(g.id.clone(), pos).is_some() {
                return Err(Error::Parse(format!("duplicate generator id {}", g.id)));
            }
        }
        let mut targets = vec![Vec::new(); generators.len()];
        for (src, tgt) in arrows {
            let s = *index
                .get(&src)
                .ok_or_else(|| Error::Parse(format!("arrow source {src} is not a declared generator")))?;
            let t = *index
                .get(&tgt)
                .ok_or_else(|| Error::Parse(format!("arrow target {tgt} is not a declared generator")))?;
            if targets[s].contains(&t) {
                return Err(Error::Parse(format!("duplicate arrow {src} -> {tgt}")));
            }
            targets[s].push(t);
        }
        for t in &mut targets {
            t.sort_unstable();
        }
        Ok(Self { name: name.into(), generators, index, targets })
    }

    // Arrow lists given by index; duplicate entries cancel over F2.
    fn from_parts(name: String, generators: Vec<Generator>, raw_targets: Vec<Vec<usize>>) -> Self {
        let index = generators.iter().enumerate().map(|(p, g)| (g.id.clone(), p)).collect();
        let targets = raw_targets
            .into_iter()
            .map(|ts| {
                let mut set = BTreeSet::new();
                for t in ts {
                    if !set.remove(&t) {
                        set.insert(t);
                    }
                }
                set.into_iter().collect()
            })
            .collect();
        Self { name, generators, index, targets }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn index_of(&self, id: &GenId) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn generator(&self, id: &GenId) -> Option<&Generator> {
        self.index_of(id).map(|p| &self.generators[p])
    }

    /// Indices of the generators in the boundary of generator `idx`.
    pub fn targets(&self, idx: usize) -> &[usize] {
        &self.targets[idx]
    }

    pub fn arrows(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.targets.iter().enumerate().flat_map(|(s, ts)| ts.iter().map(move |&t| (s, t)))
    }

    pub fn arrow_count(&self) -> usize {
        self.targets.iter().map(Vec::len).sum()
    }

    /// Ids in the boundary of `id`, in generator order.
    pub fn boundary_of(&self, id: &GenId) -> Option<Vec<&GenId>> {
        let p = self.index_of(id)?;
        Some(self.targets[p].iter().map(|&t| &self.generators[t].id).collect())
    }

    pub fn has_gradings(&self) -> bool {
        self.generators.iter().any(|g| g.grading.is_some())
    }

    /// Replaces every grading; `None` entries clear the grading.
    pub fn with_gradings(mut self, gradings: &[Option<i64>]) -> Self {
        assert_eq!(gradings.len(), self.generators.len());
        for (g, gr) in self.generators.iter_mut().zip(gradings) {
            g.grading = *gr;
        }
        self
    }

    pub fn without_gradings(mut self) -> Self {
        for g in &mut self.generators {
            g.grading = None;
        }
        self
    }

    /// Largest |i| or |j| over all generators.
    pub fn max_coord(&self) -> i64 {
        self.generators.iter().map(|g| g.filt.i.abs().max(g.filt.j.abs())).max().unwrap_or(0)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();

        let mut is_complex = true;
        for (s, ts) in self.targets.iter().enumerate() {
            let mut counts: BTreeMap<usize, u32> = BTreeMap::new();
            for &t in ts {
                for &u in &self.targets[t] {
                    *counts.entry(u).or_default() += 1;
                }
            }
            let odd: Vec<GenId> =
                counts.into_iter().filter(|&(_, c)| c % 2 == 1).map(|(u, _)| self.generators[u].id.clone()).collect();
            if !odd.is_empty() {
                is_complex = false;
                let mut ids = vec![self.generators[s].id.clone()];
                ids.extend(odd);
                violations.push(Violation { kind: ViolationKind::BoundarySquared, generators: ids });
            }
        }

        let mut is_filtered = true;
        let mut grading_consistent = true;
        for (s, t) in self.arrows() {
            let (src, tgt) = (&self.generators[s], &self.generators[t]);
            if tgt.filt.i > src.filt.i || tgt.filt.j > src.filt.j {
                is_filtered = false;
                violations.push(Violation {
                    kind: ViolationKind::FiltrationIncrease,
                    generators: vec![src.id.clone(), tgt.id.clone()],
                });
            }
            if let (Some(a), Some(b)) = (src.grading, tgt.grading) {
                if b != a - 1 {
                    grading_consistent = false;
                    violations.push(Violation {
                        kind: ViolationKind::GradingDrop,
                        generators: vec![src.id.clone(), tgt.id.clone()],
                    });
                }
            }
        }

        ValidationReport { is_complex, is_filtered, grading_consistent, violations }
    }

    /// Returns `Err(Error::Invalid)` unless every check passes.
    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::Invalid(Box::new(report)))
        }
    }

    /// Connected sum: tensor product over F2[U, U^-1] with the Leibniz differential.
    pub fn tensor_product(&self, other: &KnotComplex) -> Result<KnotComplex> {
        self.ensure_valid()?;
        other.ensure_valid()?;
        let m = other.len();
        let mut generators = Vec::with_capacity(self.len() * m);
        for x in &self.generators {
            for y in &other.generators {
                generators.push(Generator {
                    id: GenId::pair(x.id.clone(), y.id.clone()),
                    filt: Bifiltration::new(x.filt.i + y.filt.i, x.filt.j + y.filt.j),
                    grading: x.grading.zip(y.grading).map(|(a, b)| a + b),
                });
            }
        }
        let mut targets = Vec::with_capacity(generators.len());
        for xs in 0..self.len() {
            for ys in 0..m {
                let mut ts: Vec<usize> = self.targets[xs].iter().map(|&xt| xt * m + ys).collect();
                ts.extend(other.targets[ys].iter().map(|&yt| xs * m + yt));
                targets.push(ts);
            }
        }
        Ok(KnotComplex::from_parts(format!("{}#{}", self.name, other.name), generators, targets))
    }

    /// Dual complex: arrows reversed, filtrations and gradings negated.
    pub fn mirror(&self) -> Result<KnotComplex> {
        self.ensure_valid()?;
        let generators = self
            .generators
            .iter()
            .map(|g| Generator { id: g.id.clone(), filt: g.filt.neg(), grading: g.grading.map(|x| -x) })
            .collect();
        let mut targets = vec![Vec::new(); self.len()];
        for (s, t) in self.arrows() {
            targets[t].push(s);
        }
        let name = match self.name.strip_prefix(MIRROR_PREFIX).and_then(|r| r.strip_suffix(')')) {
            Some(inner) => inner.to_string(),
            None => format!("{MIRROR_PREFIX}{})", self.name),
        };
        Ok(KnotComplex::from_parts(name, generators, targets))
    }

    /// Whether the multiset of positions is invariant under (i, j) -> (j, i).
    /// Necessary but not sufficient for a genuine knot complex.
    pub fn symmetry_check(&self) -> bool {
        let mut pos: Vec<Bifiltration> = self.generators.iter().map(|g| g.filt).collect();
        let mut swapped: Vec<Bifiltration> = pos.iter().map(|f| f.swap()).collect();
        pos.sort_unstable();
        swapped.sort_unstable();
        pos == swapped
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| {
            let (ga, gb) = (&self.generators[a], &self.generators[b]);
            (ga.filt, ga.grading, &ga.id).cmp(&(gb.filt, gb.grading, &gb.id))
        });
        let mut rank = vec![0; self.len()];
        for (r, &p) in order.iter().enumerate() {
            rank[p] = r;
        }
        let nodes = order
            .iter()
            .map(|&p| {
                let g = &self.generators[p];
                (g.filt.i, g.filt.j, g.grading)
            })
            .collect();
        let mut arrows: Vec<(usize, usize)> = self.arrows().map(|(s, t)| (rank[s], rank[t])).collect();
        arrows.sort_unstable();
        CanonicalForm { nodes, arrows }
    }

    /// Renames every generator. The map must be injective.
    pub fn relabel(&self, f: impl Fn(&GenId) -> GenId) -> Result<KnotComplex> {
        let generators: Vec<Generator> =
            self.generators.iter().map(|g| Generator { id: f(&g.id), ..g.clone() }).collect();
        let arrows: Vec<(GenId, GenId)> =
            self.arrows().map(|(s, t)| (generators[s].id.clone(), generators[t].id.clone())).collect();
        KnotComplex::new(self.name.clone(), generators, arrows)
    }

    /// Generators in canonical document order: sorted by (i, j, id).
    pub fn sorted_indices(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| {
            let (ga, gb) = (&self.generators[a], &self.generators[b]);
            (ga.filt, &ga.id).cmp(&(gb.filt, &gb.id))
        });
        order
    }
}
