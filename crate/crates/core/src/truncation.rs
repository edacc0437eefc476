//! Finite windows of CFK-infinity restricted to a plane region.
//!
//! Arrows preserve the U-power, so a truncation splits into one block per
//! U-power ("level"); the boundary matrix is block diagonal and every
//! boundary test or homology computation runs block by block.

use std::collections::{BTreeMap, HashMap};

use crate::complex::{Bifiltration, ChainElement, GenId, GeneratorKey, KnotComplex};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::f2::{BitVec, ColumnReduction, F2Matrix, SpanBasis};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Region {
    /// `{i >= 0 or j >= 0}`, the large positive surgery quotient.
    Hook,
    /// `{i >= 0 and j >= 0}`, the large negative surgery quotient.
    Quadrant,
    /// `{i = 0}`.
    Slice,
}

impl Region {
    pub fn contains(self, f: Bifiltration) -> bool {
        match self {
            Region::Hook => f.i >= 0 || f.j >= 0,
            Region::Quadrant => f.i >= 0 && f.j >= 0,
            Region::Slice => f.i == 0,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BasisCell {
    pub key: GeneratorKey,
    pub filt: Bifiltration,
    pub grading: Option<i64>,
}

#[derive(Clone, Debug)]
struct Block {
    level: i64,
    start: usize,
    // boundary of each cell, as a vector over the block's cells
    columns: Vec<BitVec>,
    reduction: ColumnReduction,
    image: SpanBasis,
}

impl Block {
    fn new(level: i64, start: usize, columns: Vec<BitVec>) -> Self {
        let reduction = ColumnReduction::new(&columns);
        let image = SpanBasis::from_vectors(columns.len(), reduction.reduced.iter().filter(|c| !c.is_zero()));
        Self { level, start, columns, reduction, image }
    }

    fn len(&self) -> usize {
        self.columns.len()
    }
}

#[derive(Clone, Debug)]
pub struct TruncatedComplex {
    region: Region,
    window: i64,
    basis: Vec<BasisCell>,
    index: HashMap<GeneratorKey, usize>,
    blocks: Vec<Block>,
    block_of_level: BTreeMap<i64, usize>,
    // base generator data for every included generator
    bases: HashMap<GenId, (Bifiltration, Option<i64>)>,
}

impl TruncatedComplex {
    /// Translates `U^k g` for `-window <= k <= window`, keeping those whose
    /// position lies in `region` and whose generator passes `include`.
    /// Arrows whose target leaves the region are dropped.
    pub(crate) fn build(
        complex: &KnotComplex,
        include: &[bool],
        region: Region,
        window: i64,
        exec: Exec,
    ) -> Result<Self> {
        let gens = complex.generators();
        for (s, t) in complex.arrows() {
            if include[s] != include[t] {
                let missing = if include[s] { t } else { s };
                return Err(Error::UngradedTouched(gens[missing].id.clone()));
            }
        }

        let mut basis = Vec::new();
        let mut level_ranges = Vec::new();
        for k in -window..=window {
            let start = basis.len();
            for (g, gen) in gens.iter().enumerate() {
                if !include[g] {
                    continue;
                }
                let filt = gen.filt.u_shift(k);
                if region.contains(filt) {
                    basis.push(BasisCell {
                        key: GeneratorKey::new(gen.id.clone(), k),
                        filt,
                        grading: gen.grading.map(|x| x - 2 * k),
                    });
                }
            }
            if basis.len() > start {
                level_ranges.push((k, start, basis.len()));
            }
        }
        let index: HashMap<GeneratorKey, usize> = basis.iter().enumerate().map(|(p, c)| (c.key.clone(), p)).collect();

        let specs: Vec<(i64, usize, Vec<BitVec>)> = level_ranges
            .iter()
            .map(|&(k, start, end)| {
                let columns = (start..end)
                    .map(|p| {
                        let g = complex.index_of(&basis[p].key.base).expect("basis generator");
                        let targets = complex
                            .targets(g)
                            .iter()
                            .filter_map(|&t| index.get(&GeneratorKey::new(gens[t].id.clone(), k)).map(|&q| q - start));
                        BitVec::from_indices(end - start, targets)
                    })
                    .collect();
                (k, start, columns)
            })
            .collect();
        let blocks: Vec<Block> = exec.map(specs, |(k, start, columns)| Block::new(k, start, columns));
        let block_of_level = blocks.iter().enumerate().map(|(b, blk)| (blk.level, b)).collect();
        let bases = gens
            .iter()
            .zip(include)
            .filter(|(_, &inc)| inc)
            .map(|(g, _)| (g.id.clone(), (g.filt, g.grading)))
            .collect();

        Ok(Self { region, window, basis, index, blocks, block_of_level, bases })
    }

    pub fn region(&self) -> Region {
        self.region
    }

    pub fn window(&self) -> i64 {
        self.window
    }

    pub fn basis(&self) -> &[BasisCell] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn index_of(&self, key: &GeneratorKey) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub fn contains_key(&self, key: &GeneratorKey) -> bool {
        self.index.contains_key(key)
    }

    /// U-powers present, in increasing order.
    pub fn levels(&self) -> impl Iterator<Item = i64> + '_ {
        self.block_of_level.keys().copied()
    }

    /// Position of a translate of an included generator, whether or not it is in the window.
    pub fn position(&self, key: &GeneratorKey) -> Option<Bifiltration> {
        self.bases.get(&key.base).map(|(f, _)| f.u_shift(key.u_exp))
    }

    pub fn grading_of_key(&self, key: &GeneratorKey) -> Option<i64> {
        self.bases.get(&key.base).and_then(|(_, g)| g.map(|x| x - 2 * key.u_exp))
    }

    /// Grading of a homogeneous element; `None` for zero, ungraded or mixed elements.
    pub fn grading(&self, x: &ChainElement) -> Option<i64> {
        let mut gr = None;
        for k in x.terms() {
            let g = self.grading_of_key(k)?;
            match gr {
                None => gr = Some(g),
                Some(prev) if prev != g => return None,
                _ => {}
            }
        }
        gr
    }

    /// Full boundary matrix over the basis (rows are targets, columns sources).
    pub fn boundary_matrix(&self) -> F2Matrix {
        let n = self.basis.len();
        let mut m = F2Matrix::zeros(n, n);
        for blk in &self.blocks {
            for (c, col) in blk.columns.iter().enumerate() {
                for r in col.ones() {
                    m.set(blk.start + r, blk.start + c, true);
                }
            }
        }
        m
    }

    fn split(&self, x: &ChainElement) -> Result<BTreeMap<usize, BitVec>> {
        let mut parts: BTreeMap<usize, BitVec> = BTreeMap::new();
        for key in x.terms() {
            let p = self.index_of(key).ok_or_else(|| Error::KeyOutOfWindow(key.clone()))?;
            let b = self.block_of_level[&key.u_exp];
            let blk = &self.blocks[b];
            parts.entry(b).or_insert_with(|| BitVec::zeros(blk.len())).flip(p - blk.start);
        }
        Ok(parts)
    }

    fn element(&self, block: usize, v: &BitVec) -> ChainElement {
        let blk = &self.blocks[block];
        ChainElement::from_keys(v.ones().map(|r| self.basis[blk.start + r].key.clone()))
    }

    pub fn boundary_of(&self, x: &ChainElement) -> Result<ChainElement> {
        let mut out = ChainElement::zero();
        for (b, v) in self.split(x)? {
            let blk = &self.blocks[b];
            let mut acc = BitVec::zeros(blk.len());
            for c in v.ones() {
                acc.xor_assign(&blk.columns[c]);
            }
            for key in self.element(b, &acc).terms() {
                out.add_term(key.clone());
            }
        }
        Ok(out)
    }

    pub fn is_cycle(&self, x: &ChainElement) -> Result<bool> {
        Ok(self.boundary_of(x)?.is_zero())
    }

    /// Whether `x` lies in the image of the boundary map.
    pub fn is_boundary(&self, x: &ChainElement) -> Result<bool> {
        Ok(self.split(x)?.iter().all(|(&b, v)| self.blocks[b].image.contains(v)))
    }

    fn block_homology(&self, b: usize) -> Vec<ChainElement> {
        let blk = &self.blocks[b];
        let mut span = blk.image.clone();
        let mut reps = Vec::new();
        for kv in blk.reduction.kernel() {
            if span.insert(kv.clone()) {
                reps.push(self.element(b, &blk.image.reduce(&kv)));
            }
        }
        reps
    }

    /// Total F2 rank of the homology.
    pub fn homology_rank(&self) -> usize {
        self.blocks.iter().map(|b| b.len() - 2 * b.reduction.rank()).sum()
    }

    /// Homology representatives of the block at U-power `level`.
    pub fn level_homology(&self, level: i64) -> Vec<ChainElement> {
        self.block_of_level.get(&level).map_or_else(Vec::new, |&b| self.block_homology(b))
    }

    /// Representatives of a basis of the homology, grouped by grading.
    pub fn homology_generators(&self) -> Result<Vec<(i64, Vec<ChainElement>)>> {
        if let Some(cell) = self.basis.iter().find(|c| c.grading.is_none()) {
            return Err(Error::Precondition(format!("basis element {} has no grading", cell.key)));
        }
        let mut by_grading: BTreeMap<i64, Vec<ChainElement>> = BTreeMap::new();
        for b in 0..self.blocks.len() {
            for rep in self.block_homology(b) {
                let gr = self.grading(&rep).expect("homology representatives are homogeneous");
                by_grading.entry(gr).or_default().push(rep);
            }
        }
        Ok(by_grading.into_iter().collect())
    }
}
