//! Absolute Maslov gradings from the y-slice.
//!
//! The homology of `CFK∞{i = 0}` is a single F2 in grading 0. Pinning its
//! generator and walking the arrow graph (arrows drop grading by 1, U drops
//! it by 2) grades every generator connected to it.

use std::collections::{BTreeSet, VecDeque};

use crate::complex::{ChainElement, GenId, KnotComplex};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::truncation::{Region, TruncatedComplex};

/// A knot complex with gradings filled in where they can be derived.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedComplex {
    pub complex: KnotComplex,
    /// Generators in components not connected to the slice generator and
    /// carrying no supplied grading.
    pub ungraded: BTreeSet<GenId>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Traversal {
    #[default]
    BreadthFirst,
    DepthFirst,
}

/// The quotient complex `{i = 0}`, one translate per generator.
pub fn y_slice(c: &KnotComplex) -> Result<TruncatedComplex> {
    c.ensure_valid()?;
    let window = c.generators().iter().map(|g| g.filt.i.abs()).max().unwrap_or(0);
    TruncatedComplex::build(c, &vec![true; c.len()], Region::Slice, window, Exec::Sequential)
}

/// The generator of the slice homology; errors unless the rank is exactly 1.
pub fn slice_generator(c: &KnotComplex) -> Result<(TruncatedComplex, ChainElement)> {
    let slice = y_slice(c)?;
    let rank = slice.homology_rank();
    if rank != 1 {
        return Err(Error::SliceRank { rank });
    }
    let rep =
        slice.levels().flat_map(|k| slice.level_homology(k)).next().expect("rank one homology has a representative");
    Ok((slice, rep))
}

pub fn assign_gradings(c: &KnotComplex) -> Result<GradedComplex> {
    assign_gradings_with(c, Traversal::BreadthFirst)
}

pub fn assign_gradings_with(c: &KnotComplex, traversal: Traversal) -> Result<GradedComplex> {
    let (_, rep) = slice_generator(c)?;
    let n = c.len();

    let mut neighbours: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    for (s, t) in c.arrows() {
        neighbours[s].push((t, -1));
        neighbours[t].push((s, 1));
    }

    let mut derived: Vec<Option<i64>> = vec![None; n];
    let mut frontier: VecDeque<usize> = VecDeque::new();
    let set = |g: usize, value: i64, derived: &mut Vec<Option<i64>>| -> Result<bool> {
        match derived[g] {
            Some(prev) if prev != value => {
                Err(Error::GradingConflict { generator: c.generators()[g].id.clone(), first: prev, second: value })
            }
            Some(_) => Ok(false),
            None => {
                derived[g] = Some(value);
                Ok(true)
            }
        }
    };

    // gr(U^k g) = gr(g) - 2k, and every translate in the slice generator sits in grading 0
    for key in rep.terms() {
        let g = c.index_of(&key.base).expect("slice key refers to a generator");
        if set(g, 2 * key.u_exp, &mut derived)? {
            frontier.push_back(g);
        }
    }
    let propagate = |frontier: &mut VecDeque<usize>, derived: &mut Vec<Option<i64>>| -> Result<()> {
        while let Some(g) = match traversal {
            Traversal::BreadthFirst => frontier.pop_front(),
            Traversal::DepthFirst => frontier.pop_back(),
        } {
            let base = derived[g].expect("frontier entries are graded");
            for &(h, delta) in &neighbours[g] {
                if set(h, base + delta, derived)? {
                    frontier.push_back(h);
                }
            }
        }
        Ok(())
    };
    propagate(&mut frontier, &mut derived)?;

    // components away from the slice generator can still be graded from supplied values
    for (g, gen) in c.generators().iter().enumerate() {
        if let (None, Some(s)) = (derived[g], gen.grading) {
            derived[g] = Some(s);
            frontier.push_back(g);
            propagate(&mut frontier, &mut derived)?;
        }
    }

    let mut ungraded = BTreeSet::new();
    let mut gradings = Vec::with_capacity(n);
    for (g, gen) in c.generators().iter().enumerate() {
        let value = match (derived[g], gen.grading) {
            (Some(d), Some(s)) if d != s => {
                return Err(Error::GradingConflict { generator: gen.id.clone(), first: s, second: d })
            }
            (Some(d), _) => Some(d),
            (None, supplied) => supplied,
        };
        if value.is_none() {
            ungraded.insert(gen.id.clone());
        }
        gradings.push(value);
    }
    Ok(GradedComplex { complex: c.clone().with_gradings(&gradings), ungraded })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{Generator, GeneratorKey};

    fn id(s: &str) -> GenId {
        GenId::atom(s)
    }

    fn rht() -> KnotComplex {
        KnotComplex::new(
            "rht",
            vec![Generator::new("a", 0, 1), Generator::new("b", 1, 1), Generator::new("c", 1, 0)],
            [(id("b"), id("a")), (id("b"), id("c"))],
        )
        .unwrap()
    }

    #[test]
    fn trefoil_slice() {
        let s = y_slice(&rht()).unwrap();
        let keys: Vec<String> = s.basis().iter().map(|c| c.key.to_string()).collect();
        assert_eq!(keys, vec!["a", "U*b", "U*c"]);
        let alex: Vec<i64> = s.basis().iter().map(|c| c.filt.j).collect();
        assert_eq!(alex, vec![1, 0, -1]);
        assert_eq!(s.homology_rank(), 1);
        let (_, rep) = slice_generator(&rht()).unwrap();
        assert_eq!(rep, ChainElement::from_keys([GeneratorKey::new(id("a"), 0)]));
        // the only induced arrow is U*b -> U*c
        let m = s.boundary_matrix();
        let ones: Vec<(usize, usize)> =
            (0..3).flat_map(|r| (0..3).map(move |c| (r, c))).filter(|&(r, c)| m.get(r, c)).collect();
        assert_eq!(ones, vec![(2, 1)]);
    }

    #[test]
    fn trefoil_gradings() {
        let gc = assign_gradings(&rht()).unwrap();
        let gr: Vec<Option<i64>> = gc.complex.generators().iter().map(|g| g.grading).collect();
        assert_eq!(gr, vec![Some(0), Some(1), Some(0)]);
        assert!(gc.ungraded.is_empty());
        assert!(gc.complex.validate().is_valid());
    }

    #[test]
    fn slice_rank_error() {
        let two = KnotComplex::new("two", vec![Generator::new("a", 0, 0), Generator::new("b", 0, 0)], []).unwrap();
        assert!(matches!(y_slice(&two).map(|s| s.homology_rank()), Ok(2)));
        assert!(matches!(assign_gradings(&two), Err(Error::SliceRank { rank: 2 })));
    }

    #[test]
    fn supplied_grading_conflict() {
        let c = KnotComplex::new("u", vec![Generator::new("e", 0, 0).with_grading(2)], []).unwrap();
        assert!(matches!(assign_gradings(&c), Err(Error::GradingConflict { .. })));
    }

    #[test]
    fn disconnected_box_uses_supplied_grading() {
        let c = KnotComplex::new(
            "fig8",
            vec![
                Generator::new("e", 0, 0),
                Generator::new("x", 1, 1),
                Generator::new("y", 0, 1),
                Generator::new("z", 1, 0),
                Generator::new("w", 0, 0),
            ],
            [(id("x"), id("y")), (id("x"), id("z")), (id("y"), id("w")), (id("z"), id("w"))],
        )
        .unwrap();
        let gc = assign_gradings(&c).unwrap();
        assert_eq!(gc.ungraded.len(), 4);
        assert_eq!(gc.complex.generators()[0].grading, Some(0));

        let supplied = c.with_gradings(&[None, None, None, None, Some(0)]);
        let gc2 = assign_gradings(&supplied).unwrap();
        assert!(gc2.ungraded.is_empty());
        let gr: Vec<Option<i64>> = gc2.complex.generators().iter().map(|g| g.grading).collect();
        assert_eq!(gr, vec![Some(0), Some(2), Some(1), Some(1), Some(0)]);
    }
}
