use std::collections::{BTreeSet, HashSet};

use dtower_core::dinv::{compute_d, d_minus_one_via_mirror, descend, tower_class, truncate_region_with, DConfig};
use dtower_core::f2::{BitVec, F2Matrix};
use dtower_core::grading::{assign_gradings, assign_gradings_with, Traversal};
use dtower_core::models::{self, box_sum, staircase, StaircaseSpec};
use dtower_core::{read_complex, write_complex, Bifiltration, Exec, KnotComplex, Region};
use proptest::prelude::*;

fn span_size(rows: &[BitVec]) -> usize {
    let cols = rows.first().map_or(0, BitVec::len);
    let mut seen = HashSet::new();
    for mask in 0u32..1 << rows.len() {
        let mut v = BitVec::zeros(cols);
        for (r, row) in rows.iter().enumerate() {
            if mask >> r & 1 == 1 {
                v.xor_assign(row);
            }
        }
        seen.insert(v.ones().collect::<Vec<_>>());
    }
    seen.len()
}

fn matrix() -> impl Strategy<Value = Vec<Vec<bool>>> {
    (1usize..=12, 1usize..=12).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(any::<bool>(), c), r))
}

fn steps() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1u32..=3, 1..=3)
}

/// Staircases, their mirrors, and sums of two of them.
fn knot() -> impl Strategy<Value = KnotComplex> {
    (steps(), any::<bool>(), prop::option::of((steps(), any::<bool>()))).prop_map(|(a, ma, other)| {
        let pick = |s: Vec<u32>, m: bool| {
            let c = staircase(&StaircaseSpec::new(s).unwrap());
            if m {
                c.mirror().unwrap()
            } else {
                c
            }
        };
        let first = pick(a, ma);
        match other {
            Some((b, mb)) if first.len() * (2 * b.len() + 1) <= 49 => first.tensor_product(&pick(b, mb)).unwrap(),
            _ => first,
        }
    })
}

fn offsets() -> impl Strategy<Value = Vec<Bifiltration>> {
    prop::collection::vec((-4i64..=4, -4i64..=4).prop_map(|(i, j)| Bifiltration::new(i, j)), 0..=4)
}

// V_0 of a staircase: the smallest max(i, j) over its cycle generators
fn v0(spec: &StaircaseSpec) -> i64 {
    let c = staircase(spec);
    c.generators().iter().step_by(2).map(|g| g.filt.i.max(g.filt.j)).min().unwrap()
}

fn cfg() -> DConfig {
    DConfig { exec: Exec::Sequential, ..DConfig::default() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rank_matches_exhaustive_span(rows in matrix()) {
        let bits: Vec<BitVec> = rows
            .iter()
            .map(|r| BitVec::from_indices(r.len(), r.iter().enumerate().filter(|(_, &b)| b).map(|(k, _)| k)))
            .collect();
        let m = F2Matrix::from_rows(rows[0].len(), bits.clone());
        let size = span_size(&bits);
        prop_assert_eq!(1usize << m.rank(), size);
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn staircase_matches_v0(s in steps()) {
        let spec = StaircaseSpec::new(s).unwrap();
        let c = staircase(&spec);
        let r = compute_d(&c, &cfg()).unwrap();
        prop_assert_eq!(r.d_plus, -2 * v0(&spec));
        prop_assert_eq!(r.d_minus, 0);
        let m = compute_d(&c.mirror().unwrap(), &cfg()).unwrap();
        prop_assert_eq!((m.d_plus, m.d_minus), (0, 2 * v0(&spec)));
    }

    #[test]
    fn parity_and_mirror_identity(c in knot()) {
        let r = compute_d(&c, &cfg()).unwrap();
        prop_assert_eq!(r.d_plus % 2, 0);
        prop_assert_eq!(r.d_minus % 2, 0);
        prop_assert_eq!(r.d_minus, d_minus_one_via_mirror(&c).unwrap());
        prop_assert!(r.d_plus <= 0 && r.d_minus >= 0);
    }

    #[test]
    fn window_stability(c in knot()) {
        let gc = assign_gradings(&c).unwrap();
        let base = c.max_coord() + 4;
        let at = |b: i64| {
            let side = |region| {
                let tc = truncate_region_with(&gc, region, b, Exec::Sequential).unwrap();
                descend(&tc, &tower_class(&tc).unwrap()).unwrap().last_grading
            };
            (side(Region::Hook), side(Region::Quadrant))
        };
        let first = at(base);
        let r = compute_d(&c, &cfg()).unwrap();
        prop_assert_eq!(first, (r.d_plus, r.d_minus));
        prop_assert_eq!(first, at(2 * base));
        prop_assert_eq!(first, at(3 * base));
    }

    #[test]
    fn boxes_carry_no_d(offs in offsets(), s in steps()) {
        let boxes = box_sum(offs.len(), &offs).unwrap();
        let r = compute_d(&boxes, &cfg()).unwrap();
        prop_assert_eq!((r.d_plus, r.d_minus), (0, 0));
        // adding boxes to a staircase changes nothing
        let c = staircase(&StaircaseSpec::new(s).unwrap());
        let with = compute_d(&c.tensor_product(&boxes).unwrap(), &cfg()).unwrap();
        let without = compute_d(&c, &cfg()).unwrap();
        prop_assert_eq!((with.d_plus, with.d_minus), (without.d_plus, without.d_minus));
    }

    #[test]
    fn tensor_counts_and_positions(a in knot(), b in steps()) {
        let b = staircase(&StaircaseSpec::new(b).unwrap());
        let t = a.tensor_product(&b).unwrap();
        prop_assert_eq!(t.len(), a.len() * b.len());
        let mut expected: Vec<(i64, i64)> = a
            .generators()
            .iter()
            .flat_map(|x| b.generators().iter().map(move |y| (x.filt.i + y.filt.i, x.filt.j + y.filt.j)))
            .collect();
        let mut got: Vec<(i64, i64)> = t.generators().iter().map(|g| (g.filt.i, g.filt.j)).collect();
        expected.sort_unstable();
        got.sort_unstable();
        prop_assert_eq!(got, expected);
        prop_assert!(t.validate().is_valid());
        let u = models::unknot().tensor_product(&a).unwrap();
        prop_assert_eq!(u.canonical_form(), a.canonical_form());
    }

    #[test]
    fn grading_order_independent(c in knot(), offs in offsets()) {
        let c = c.tensor_product(&box_sum(offs.len(), &offs).unwrap()).unwrap();
        let bfs = assign_gradings_with(&c, Traversal::BreadthFirst).unwrap();
        let dfs = assign_gradings_with(&c, Traversal::DepthFirst).unwrap();
        prop_assert_eq!(bfs, dfs);
    }

    #[test]
    fn serialization_round_trip(c in knot()) {
        let text = write_complex(&c);
        let back = read_complex(&text).unwrap();
        prop_assert_eq!(write_complex(&back), text.clone());
        prop_assert_eq!(back.canonical_form(), c.canonical_form());
        let ids: BTreeSet<String> = back.generators().iter().map(|g| g.id.to_string()).collect();
        prop_assert_eq!(ids.len(), c.len());
    }
}
