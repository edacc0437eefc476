//! Correction terms of +1 and -1 surgery.
//!
//! `d(S^3_{+1}(K))` is the grading of the last U-power of the tower class
//! that survives in the homology of the hook quotient `{i >= 0 or j >= 0}`;
//! `d(S^3_{-1}(K))` is the same quantity for the first quadrant
//! `{i >= 0 and j >= 0}`. Both are computed mod 2.

use num_rational::Rational64;

use crate::complex::{ChainElement, KnotComplex};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::grading::{assign_gradings, GradedComplex};
use crate::truncation::{Region, TruncatedComplex};

/// Padding added to the largest coordinate when choosing the first window.
pub const WINDOW_PADDING: i64 = 4;

#[derive(Clone, Copy, Debug)]
pub struct DConfig {
    /// First U-exponent bound tried; defaults to the largest coordinate plus [`WINDOW_PADDING`].
    pub initial_window: Option<i64>,
    /// Doubling stops with [`Error::WindowExhausted`] past this bound.
    pub max_window: i64,
    pub exec: Exec,
}

impl Default for DConfig {
    fn default() -> Self {
        Self { initial_window: None, max_window: 1 << 12, exec: Exec::default() }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TraceStep {
    /// Power of U applied to the tower class.
    pub u_power: i64,
    pub grading: i64,
    pub died: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Descent {
    /// Smallest `m >= 1` with `U^m x` zero in homology.
    pub steps: i64,
    /// Grading of `U^(m-1) x`.
    pub last_grading: i64,
    pub trace: Vec<TraceStep>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DInvariantReport {
    pub d_plus: i64,
    pub d_minus: i64,
    pub windows_used: (i64, i64),
    pub descent_traces: (Vec<TraceStep>, Vec<TraceStep>),
    /// Generators left ungraded (direct summands not touched by the tower).
    pub ungraded: usize,
}

/// Restricts the graded part of `c` to `region`, U-exponents in `[-window, window]`.
pub fn truncate_region(c: &GradedComplex, region: Region, window: i64) -> Result<TruncatedComplex> {
    truncate_region_with(c, region, window, Exec::default())
}

pub fn truncate_region_with(c: &GradedComplex, region: Region, window: i64, exec: Exec) -> Result<TruncatedComplex> {
    let include: Vec<bool> = c.complex.generators().iter().map(|g| g.grading.is_some()).collect();
    TruncatedComplex::build(&c.complex, &include, region, window, exec)
}

/// Pushes `x` down by U until it dies in homology. Terms leaving the region
/// are dropped before each boundary test.
pub fn descend(tc: &TruncatedComplex, x: &ChainElement) -> Result<Descent> {
    if !tc.is_cycle(x)? {
        return Err(Error::NotACycle);
    }
    if tc.is_boundary(x)? {
        return Err(Error::ZeroClass);
    }
    let grading =
        tc.grading(x).ok_or_else(|| Error::Precondition("descent needs a grading-homogeneous class".into()))?;
    let region = tc.region();
    let mut trace = vec![TraceStep { u_power: 0, grading, died: false }];
    let mut m = 1;
    loop {
        let mut y = x.u_shift(m);
        y.retain(|k| tc.position(k).is_some_and(|f| region.contains(f)));
        if let Some(k) = y.terms().find(|k| !tc.contains_key(k)) {
            debug_assert!(k.u_exp > tc.window());
            return Err(Error::WindowExhausted { window: tc.window() });
        }
        let died = y.is_zero() || tc.is_boundary(&y)?;
        trace.push(TraceStep { u_power: m, grading: grading - 2 * m, died });
        if died {
            return Ok(Descent { steps: m, last_grading: grading - 2 * (m - 1), trace });
        }
        m += 1;
    }
}

/// The image of the generator of `H(CFK∞) = F2[U, U^-1]` at the top U-level
/// of the window.
///
/// Among the homology classes of the top level, the one surviving the most
/// U-multiplications before the level `window / 2` wins; ties go to the first
/// class in echelon order.
pub fn tower_class(tc: &TruncatedComplex) -> Result<ChainElement> {
    let top = tc.levels().next().ok_or(Error::NoTower)?;
    let cap = tc.window() / 2 - top;
    let mut best: Option<(i64, ChainElement)> = None;
    for class in tc.level_homology(top) {
        let survived = match descend(tc, &class) {
            Ok(d) => d.steps - 1,
            Err(Error::WindowExhausted { .. }) => cap,
            Err(e) => return Err(e),
        }
        .min(cap);
        if best.as_ref().is_none_or(|(s, _)| survived > *s) {
            best = Some((survived, class));
        }
    }
    match best {
        Some((s, class)) if s > 0 => Ok(class),
        _ => Err(Error::NoTower),
    }
}

fn unshifted_d(c: &GradedComplex, region: Region, window: i64, exec: Exec) -> Result<(i64, Vec<TraceStep>)> {
    let tc = truncate_region_with(c, region, window, exec)?;
    let x = tower_class(&tc)?;
    let d = descend(&tc, &x)?;
    Ok((d.last_grading, d.trace))
}

// Doubles the window until two consecutive sizes give the same answer.
fn stable_d(c: &GradedComplex, region: Region, cfg: &DConfig) -> Result<(i64, i64, Vec<TraceStep>)> {
    let mut window = cfg.initial_window.unwrap_or_else(|| c.complex.max_coord() + WINDOW_PADDING).max(1);
    let mut previous: Option<i64> = None;
    let mut last_err = None;
    while window <= cfg.max_window {
        match unshifted_d(c, region, window, cfg.exec) {
            Ok((d, trace)) => {
                if previous == Some(d) {
                    return Ok((d, window, trace));
                }
                previous = Some(d);
            }
            Err(e @ (Error::WindowExhausted { .. } | Error::NoTower)) => {
                previous = None;
                last_err = Some(e);
            }
            Err(e) => return Err(e),
        }
        window *= 2;
    }
    Err(last_err.unwrap_or(Error::WindowExhausted { window: cfg.max_window }))
}

fn even(d: i64) -> Result<i64> {
    if d % 2 == 0 {
        Ok(d)
    } else {
        Err(Error::OddInvariant { value: d })
    }
}

pub fn compute_d(c: &KnotComplex, cfg: &DConfig) -> Result<DInvariantReport> {
    let gc = assign_gradings(c)?;
    let (plus, minus) = cfg.exec.join(|| stable_d(&gc, Region::Hook, cfg), || stable_d(&gc, Region::Quadrant, cfg));
    let (d_plus, b_plus, t_plus) = plus?;
    let (d_minus, b_minus, t_minus) = minus?;
    Ok(DInvariantReport {
        d_plus: even(d_plus)?,
        d_minus: even(d_minus)?,
        windows_used: (b_plus, b_minus),
        descent_traces: (t_plus, t_minus),
        ungraded: gc.ungraded.len(),
    })
}

/// Reports for many complexes, evaluated independently.
pub fn compute_d_batch(cs: &[KnotComplex], cfg: &DConfig) -> Vec<Result<DInvariantReport>> {
    let inner = DConfig { exec: Exec::Sequential, ..*cfg };
    cfg.exec.map(cs.iter().collect(), |c| compute_d(c, &inner))
}

pub fn d_plus_one(c: &KnotComplex) -> Result<i64> {
    d_plus_one_with(c, &DConfig::default())
}

pub fn d_plus_one_with(c: &KnotComplex, cfg: &DConfig) -> Result<i64> {
    let gc = assign_gradings(c)?;
    even(stable_d(&gc, Region::Hook, cfg)?.0)
}

pub fn d_minus_one(c: &KnotComplex) -> Result<i64> {
    d_minus_one_with(c, &DConfig::default())
}

pub fn d_minus_one_with(c: &KnotComplex, cfg: &DConfig) -> Result<i64> {
    let gc = assign_gradings(c)?;
    even(stable_d(&gc, Region::Quadrant, cfg)?.0)
}

/// `-d(S^3_{+1}(mK))`, an independent route to `d(S^3_{-1}(K))`.
pub fn d_minus_one_via_mirror(c: &KnotComplex) -> Result<i64> {
    Ok(-d_plus_one(&c.mirror()?)?)
}

/// Largest Alexander coordinate `j - i` over the generators.
pub fn genus_bound(c: &KnotComplex) -> i64 {
    c.generators().iter().map(|g| g.filt.j - g.filt.i).max().unwrap_or(0)
}

/// Shifted correction term of `S^3_{sign * p}(K)` in the structure `[0]`,
/// valid once `p >= 2g - 1`.
pub fn large_surgery_d(c: &KnotComplex, p: i64, sign: i64) -> Result<Rational64> {
    if p < 1 {
        return Err(Error::Precondition(format!("surgery coefficient {p} must be positive")));
    }
    let g = genus_bound(c);
    if p < 2 * g - 1 {
        return Err(Error::Precondition(format!("p = {p} is below 2g - 1 = {}", 2 * g - 1)));
    }
    match sign {
        1 => Ok(Rational64::from_integer(d_plus_one(c)?) + Rational64::new(p - 1, 4)),
        -1 => Ok(Rational64::from_integer(d_minus_one(c)?) + Rational64::new(1 - p, 4)),
        s => Err(Error::Precondition(format!("sign must be +1 or -1, got {s}"))),
    }
}

/// Closed form for alternating knots: `2 min(0, -ceil(-sigma / 4))`.
pub fn alt_signature_d(sigma: i64) -> Result<i64> {
    if sigma % 2 != 0 {
        return Err(Error::OddSignature(sigma));
    }
    let ceil = -(sigma.div_euclid(4));
    Ok(2 * 0.min(-ceil))
}
