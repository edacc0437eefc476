//! Generating complexes for the standard examples.

use crate::complex::{Bifiltration, GenId, Generator, KnotComplex};
use crate::error::{Error, Result};

/// Segment lengths of a staircase symmetric about `i = j`.
///
/// `steps` is the first half of the alternating horizontal/vertical sequence;
/// the second half is its reverse. `[1]` is the trefoil, `[1, 2]` is `T(3,4)`
/// and `[1, 1]` is `T(2,5)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StaircaseSpec {
    steps: Vec<u32>,
}

impl StaircaseSpec {
    pub fn new(steps: Vec<u32>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::Precondition("staircase needs at least one step".into()));
        }
        if steps.contains(&0) {
            return Err(Error::Precondition("staircase steps must be positive".into()));
        }
        Ok(Self { steps })
    }

    pub fn steps(&self) -> &[u32] {
        &self.steps
    }

    /// The full segment sequence, horizontal first.
    pub fn segments(&self) -> Vec<i64> {
        let half = self.steps.iter().map(|&s| i64::from(s));
        half.clone().chain(half.rev()).collect()
    }
}

/// `a, b, ..., z, aa, ab, ...`
fn letter_id(mut n: usize) -> String {
    let mut out = Vec::new();
    loop {
        out.push(b'a' + (n % 26) as u8);
        if n < 26 {
            break;
        }
        n = n / 26 - 1;
    }
    out.reverse();
    String::from_utf8(out).expect("ascii")
}

pub fn unknot() -> KnotComplex {
    KnotComplex::new("unknot", vec![Generator::new("e", 0, 0)], []).expect("unknot is well formed")
}

/// Zig-zag complex starting on the j-axis and ending on the i-axis. Corner
/// generators at odd positions map to both neighbours.
pub fn staircase(spec: &StaircaseSpec) -> KnotComplex {
    let segments = spec.segments();
    let height: i64 = segments.iter().skip(1).step_by(2).sum();
    let mut pos = Bifiltration::new(0, height);
    let mut generators = vec![Generator::new(letter_id(0), pos.i, pos.j)];
    for (n, &len) in segments.iter().enumerate() {
        if n % 2 == 0 {
            pos.i += len;
        } else {
            pos.j -= len;
        }
        generators.push(Generator::new(letter_id(n + 1), pos.i, pos.j));
    }
    let ids: Vec<GenId> = generators.iter().map(|g| g.id.clone()).collect();
    let arrows: Vec<(GenId, GenId)> = (1..ids.len())
        .step_by(2)
        .flat_map(|p| [(ids[p].clone(), ids[p - 1].clone()), (ids[p].clone(), ids[p + 1].clone())])
        .collect();
    let name = format!("staircase{:?}", spec.steps);
    KnotComplex::new(name, generators, arrows).expect("staircase is well formed")
}

/// An isolated generator at the origin plus one acyclic box per offset.
pub fn box_sum(n_boxes: usize, offsets: &[Bifiltration]) -> Result<KnotComplex> {
    if offsets.len() != n_boxes {
        return Err(Error::Precondition(format!("expected {n_boxes} box offsets, got {}", offsets.len())));
    }
    let mut generators = vec![Generator::new("e", 0, 0)];
    let mut arrows = Vec::new();
    for (k, f) in offsets.iter().enumerate() {
        let (p, q) = (f.i, f.j);
        let [x, y, z, w] = ["x", "y", "z", "w"].map(|s| format!("{s}{k}"));
        generators.push(Generator::new(x.clone(), p, q));
        generators.push(Generator::new(y.clone(), p - 1, q));
        generators.push(Generator::new(z.clone(), p, q - 1));
        generators.push(Generator::new(w.clone(), p - 1, q - 1));
        for (s, t) in [(&x, &y), (&x, &z), (&y, &w), (&z, &w)] {
            arrows.push((GenId::atom(s.as_str()), GenId::atom(t.as_str())));
        }
    }
    let name = if n_boxes == 0 { "unknot".to_string() } else { format!("boxes{n_boxes}") };
    KnotComplex::new(name, generators, arrows)
}

pub fn rht() -> KnotComplex {
    staircase(&StaircaseSpec::new(vec![1]).expect("valid")).with_name("rht")
}

pub fn lht() -> KnotComplex {
    rht().mirror().expect("rht is valid").with_name("lht")
}

pub fn t34() -> KnotComplex {
    staircase(&StaircaseSpec::new(vec![1, 2]).expect("valid")).with_name("t34")
}

pub fn fig8() -> KnotComplex {
    box_sum(1, &[Bifiltration::new(1, 1)]).expect("one offset").with_name("fig8")
}

/// Box centres chosen so that the Alexander gradings of the boxes match the
/// knot Floer homology of the (2,1) cable of the figure-eight: two boxes
/// centred in each of the Alexander gradings 1, -1, 2, -2.
pub const C21_OFFSETS: [(i64, i64); 8] = [(1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2), (2, 4), (4, 2)];

pub fn c21_model() -> KnotComplex {
    let offsets: Vec<Bifiltration> = C21_OFFSETS.iter().map(|&(i, j)| Bifiltration::new(i, j)).collect();
    box_sum(offsets.len(), &offsets).expect("offsets match").with_name("c21-model")
}

pub const PRESET_NAMES: [&str; 6] = ["unknot", "rht", "lht", "t34", "fig8", "c21-model"];

pub fn preset(name: &str) -> Option<KnotComplex> {
    Some(match name {
        "unknot" => unknot(),
        "rht" => rht(),
        "lht" => lht(),
        "t34" => t34(),
        "fig8" => fig8(),
        "c21-model" => c21_model(),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::y_slice;

    fn positions(c: &KnotComplex) -> Vec<(i64, i64)> {
        c.generators().iter().map(|g| (g.filt.i, g.filt.j)).collect()
    }

    #[test]
    fn trefoil_staircase() {
        let c = rht();
        assert_eq!(positions(&c), vec![(0, 1), (1, 1), (1, 0)]);
        let b = c.boundary_of(&GenId::atom("b")).unwrap();
        assert_eq!(b.iter().map(|g| g.to_string()).collect::<Vec<_>>(), vec!["a", "c"]);
    }

    #[test]
    fn t34_staircase() {
        let c = t34();
        assert_eq!(positions(&c), vec![(0, 3), (1, 3), (1, 1), (3, 1), (3, 0)]);
        let mut alex: Vec<i64> = y_slice(&c).unwrap().basis().iter().map(|cell| cell.filt.j).collect();
        alex.sort_unstable();
        assert_eq!(alex, vec![-3, -2, 0, 2, 3]);
    }

    #[test]
    fn staircase_generator_count() {
        for steps in [vec![1], vec![1, 1], vec![2, 1, 3], vec![1, 1, 1, 1]] {
            let n = steps.len();
            let c = staircase(&StaircaseSpec::new(steps).unwrap());
            assert_eq!(c.len(), 2 * n + 1);
            assert_eq!(c.arrow_count(), 2 * n);
        }
        assert!(StaircaseSpec::new(vec![]).is_err());
        assert!(StaircaseSpec::new(vec![1, 0]).is_err());
    }

    #[test]
    fn presets_are_valid_and_symmetric() {
        for name in PRESET_NAMES {
            let c = preset(name).unwrap();
            assert!(c.validate().is_valid(), "{name}");
            assert!(c.symmetry_check(), "{name}");
            assert_eq!(y_slice(&c).unwrap().homology_rank(), 1, "{name}");
            assert_eq!(c.name(), name);
        }
        assert!(preset("nope").is_none());
    }

    #[test]
    fn box_sum_shapes() {
        let c = box_sum(0, &[]).unwrap();
        assert_eq!(c.canonical_form(), unknot().canonical_form());
        assert_eq!(fig8().len(), 5);
        assert_eq!(c21_model().len(), 33);
        assert!(box_sum(2, &[Bifiltration::new(0, 0)]).is_err());
    }

    #[test]
    fn letter_ids() {
        assert_eq!(letter_id(0), "a");
        assert_eq!(letter_id(25), "z");
        assert_eq!(letter_id(26), "aa");
        assert_eq!(letter_id(27), "ab");
    }
}
