//! Block-sparse operators on a truncated Fock module.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::exact::{ExactMatrix, GaussianRational, GramForm, SparseVec};
use crate::quad::Leg;
use crate::report::EntryWitness;

type Q = GaussianRational;

/// Component bookkeeping shared by every operator on one Fock module.
///
/// Component 0 is level 0. A word `w` of length `n - 1` at level `n >= 1`
/// is component `2^(n-1) + rank(w)`, where `rank` reads `w` as binary with
/// `1 -> 0`, `2 -> 1`, most significant letter first.
#[derive(Debug)]
pub struct FockLayout {
    depth: usize,
    dims: Vec<usize>,
    offsets: Vec<usize>,
    total: usize,
    grams: Vec<GramForm>,
    gram_inv: Vec<ExactMatrix>,
}

impl FockLayout {
    pub(crate) fn new(depth: usize, grams: Vec<GramForm>) -> crate::Result<Self> {
        assert_eq!(grams.len(), 1 << depth);
        let dims: Vec<usize> = grams.iter().map(GramForm::dim).collect();
        let mut offsets = Vec::with_capacity(dims.len());
        let mut total = 0;
        for d in &dims {
            offsets.push(total);
            total += d;
        }
        let gram_inv = grams
            .iter()
            .map(|g| g.matrix().inverse())
            .collect::<crate::Result<_>>()?;
        Ok(Self {
            depth,
            dims,
            offsets,
            total,
            grams,
            gram_inv,
        })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn num_components(&self) -> usize {
        self.dims.len()
    }

    pub fn dim(&self, comp: usize) -> usize {
        self.dims[comp]
    }

    pub fn offset(&self, comp: usize) -> usize {
        self.offsets[comp]
    }

    pub fn total_dim(&self) -> usize {
        self.total
    }

    pub fn gram(&self, comp: usize) -> &GramForm {
        &self.grams[comp]
    }

    pub fn gram_inverse(&self, comp: usize) -> &ExactMatrix {
        &self.gram_inv[comp]
    }

    pub fn level_of(comp: usize) -> usize {
        if comp == 0 {
            0
        } else {
            comp.ilog2() as usize + 1
        }
    }

    pub fn components_at(level: usize) -> std::ops::Range<usize> {
        if level == 0 {
            0..1
        } else {
            (1 << (level - 1))..(1 << level)
        }
    }

    pub fn component(level: usize, word: &[Leg]) -> usize {
        if level == 0 {
            return 0;
        }
        assert_eq!(word.len(), level - 1, "word length must be level - 1");
        let rank = word
            .iter()
            .fold(0usize, |acc, l| 2 * acc + (l.number() - 1));
        (1 << (level - 1)) + rank
    }

    /// `(level, word)` of a component.
    pub fn word(comp: usize) -> (usize, Vec<Leg>) {
        let level = Self::level_of(comp);
        if level <= 1 {
            return (level, Vec::new());
        }
        let rank = comp - (1 << (level - 1));
        let word = (0..level - 1)
            .rev()
            .map(|b| {
                if rank >> b & 1 == 0 {
                    Leg::One
                } else {
                    Leg::Two
                }
            })
            .collect();
        (level, word)
    }

    pub fn level_dims(&self) -> Vec<usize> {
        (0..=self.depth)
            .map(|n| Self::components_at(n).map(|c| self.dims[c]).sum())
            .collect()
    }

    /// Component holding a global coordinate.
    pub fn locate(&self, global: usize) -> (usize, usize) {
        let comp = self.offsets.partition_point(|&o| o <= global) - 1;
        (comp, global - self.offsets[comp])
    }

    pub fn inject(&self, comp: usize, local: &[Q]) -> Vec<Q> {
        assert_eq!(local.len(), self.dims[comp]);
        let mut v = vec![Q::zero(); self.total];
        v[self.offsets[comp]..self.offsets[comp] + local.len()].clone_from_slice(local);
        v
    }

    pub fn extract(&self, comp: usize, global: &[Q]) -> Vec<Q> {
        global[self.offsets[comp]..self.offsets[comp] + self.dims[comp]].to_vec()
    }

    /// `τ ∘ ⟨x|y⟩_A` on the whole truncation.
    pub fn pair(&self, x: &[Q], y: &[Q]) -> Q {
        (0..self.num_components())
            .map(|c| self.grams[c].pair(&self.extract(c, x), &self.extract(c, y)))
            .fold(Q::zero(), |acc, v| acc + v)
    }
}

/// Degree of a nonzero operator under the level grading.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Degree {
    Homogeneous(i64),
    Mixed,
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Homogeneous(d) => write!(f, "{d}"),
            Degree::Mixed => f.write_str("mixed"),
        }
    }
}

/// Operator on `F₀ ⊕ … ⊕ F_K`, stored as nonzero component blocks keyed by
/// `(row component, column component)`.
#[derive(Clone, Debug)]
pub struct FockOperator {
    layout: Arc<FockLayout>,
    blocks: BTreeMap<(usize, usize), ExactMatrix>,
}

impl PartialEq for FockOperator {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.layout, &other.layout) && self.blocks == other.blocks
    }
}

impl FockOperator {
    pub fn zero(layout: &Arc<FockLayout>) -> Self {
        Self {
            layout: Arc::clone(layout),
            blocks: BTreeMap::new(),
        }
    }

    pub fn identity(layout: &Arc<FockLayout>) -> Self {
        Self::scalar_per_level(layout, |_| Q::one())
    }

    /// Block-diagonal operator acting on level `n` by the scalar `f(n)`.
    pub fn scalar_per_level(layout: &Arc<FockLayout>, f: impl Fn(usize) -> Q) -> Self {
        let mut op = Self::zero(layout);
        for c in 0..layout.num_components() {
            let s = f(FockLayout::level_of(c));
            op.set_block(c, c, ExactMatrix::identity(layout.dim(c)).scale(&s));
        }
        op
    }

    pub fn layout(&self) -> &Arc<FockLayout> {
        &self.layout
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&(usize, usize), &ExactMatrix)> {
        self.blocks.iter()
    }

    pub fn block(&self, row: usize, col: usize) -> Option<&ExactMatrix> {
        self.blocks.get(&(row, col))
    }

    /// Block `(row, col)`, zero if absent.
    pub fn block_or_zero(&self, row: usize, col: usize) -> ExactMatrix {
        self.blocks
            .get(&(row, col))
            .cloned()
            .unwrap_or_else(|| ExactMatrix::zeros(self.layout.dim(row), self.layout.dim(col)))
    }

    /// Replaces a block; zero blocks are dropped.
    pub fn set_block(&mut self, row: usize, col: usize, m: ExactMatrix) {
        assert_eq!(
            (m.rows(), m.cols()),
            (self.layout.dim(row), self.layout.dim(col))
        );
        if m.is_zero() {
            self.blocks.remove(&(row, col));
        } else {
            self.blocks.insert((row, col), m);
        }
    }

    fn accumulate(&mut self, row: usize, col: usize, m: &ExactMatrix) {
        match self.blocks.get_mut(&(row, col)) {
            Some(b) => {
                b.add_assign(m);
                if b.is_zero() {
                    self.blocks.remove(&(row, col));
                }
            }
            None if !m.is_zero() => {
                self.blocks.insert((row, col), m.clone());
            }
            None => {}
        }
    }

    fn same_layout(&self, rhs: &Self) {
        assert!(
            Arc::ptr_eq(&self.layout, &rhs.layout),
            "operators belong to different Fock modules"
        );
    }

    pub fn compose(&self, rhs: &Self) -> Self {
        self.same_layout(rhs);
        let mut by_row: HashMap<usize, Vec<(usize, &ExactMatrix)>> = HashMap::new();
        for (&(k, c), b) in &rhs.blocks {
            by_row.entry(k).or_default().push((c, b));
        }
        let mut out = Self::zero(&self.layout);
        for (&(r, k), a) in &self.blocks {
            for &(c, b) in by_row.get(&k).map(Vec::as_slice).unwrap_or(&[]) {
                out.accumulate(r, c, &a.mul(b));
            }
        }
        out
    }

    pub fn plus(&self, rhs: &Self) -> Self {
        self.same_layout(rhs);
        let mut out = self.clone();
        for (&(r, c), b) in &rhs.blocks {
            out.accumulate(r, c, b);
        }
        out
    }

    pub fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.scale(&-Q::one()))
    }

    pub fn scale(&self, s: &Q) -> Self {
        let mut out = Self::zero(&self.layout);
        if s.is_zero() {
            return out;
        }
        for (&k, b) in &self.blocks {
            out.blocks.insert(k, b.scale(s));
        }
        out
    }

    /// Adjoint for `τ ∘ ⟨·|·⟩_A`: block `(c, r)` is `G_c⁻¹ X_{r,c}ᴴ G_r`.
    pub fn adjoint(&self) -> Self {
        let l = &self.layout;
        let mut out = Self::zero(l);
        for (&(r, c), x) in &self.blocks {
            let b = l
                .gram_inverse(c)
                .mul(&x.conj_transpose())
                .mul(l.gram(r).matrix());
            out.set_block(c, r, b);
        }
        out
    }

    /// Keeps only columns whose level lies in `[lo, hi]`.
    pub fn restrict_cols(&self, lo: usize, hi: usize) -> Self {
        let mut out = Self::zero(&self.layout);
        for (&(r, c), b) in &self.blocks {
            if (lo..=hi).contains(&FockLayout::level_of(c)) {
                out.blocks.insert((r, c), b.clone());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    /// First nonzero entry in (row component, column component) order.
    pub fn witness(&self) -> Option<EntryWitness> {
        let ((r, c), b) = self.blocks.iter().next()?;
        let (i, j, v) = b.first_nonzero()?;
        Some(EntryWitness {
            row: self.layout.offset(*r) + i,
            col: self.layout.offset(*c) + j,
            row_level: FockLayout::level_of(*r),
            col_level: FockLayout::level_of(*c),
            value: v.to_string(),
            note: None,
        })
    }

    /// `None` for the zero operator.
    pub fn degree(&self) -> Option<Degree> {
        let mut degs = self
            .blocks
            .keys()
            .map(|&(r, c)| FockLayout::level_of(r) as i64 - FockLayout::level_of(c) as i64);
        let first = degs.next()?;
        Some(if degs.all(|d| d == first) {
            Degree::Homogeneous(first)
        } else {
            Degree::Mixed
        })
    }

    /// Level-preserving part.
    pub fn degree_zero_part(&self) -> Self {
        let mut out = Self::zero(&self.layout);
        for (&(r, c), b) in &self.blocks {
            if FockLayout::level_of(r) == FockLayout::level_of(c) {
                out.blocks.insert((r, c), b.clone());
            }
        }
        out
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        let l = &self.layout;
        assert_eq!(v.len(), l.total_dim());
        let mut out = vec![Q::zero(); l.total_dim()];
        for (&(r, c), b) in &self.blocks {
            let y = b.mul_vec(&l.extract(c, v));
            for (k, y) in y.into_iter().enumerate() {
                out[l.offset(r) + k] += &y;
            }
        }
        out
    }

    /// Nonzero entries keyed by `row * total + col`.
    pub fn to_sparse(&self) -> SparseVec {
        let l = &self.layout;
        let n = l.total_dim();
        let mut v = SparseVec::new();
        for (&(r, c), b) in &self.blocks {
            for i in 0..b.rows() {
                for j in 0..b.cols() {
                    let x = &b[(i, j)];
                    if !x.is_zero() {
                        v.insert((l.offset(r) + i) * n + l.offset(c) + j, x.clone());
                    }
                }
            }
        }
        v
    }

    pub fn to_dense(&self) -> ExactMatrix {
        let l = &self.layout;
        let mut m = ExactMatrix::zeros(l.total_dim(), l.total_dim());
        for (&(r, c), b) in &self.blocks {
            m.set_block(l.offset(r), l.offset(c), b);
        }
        m
    }

    /// Self-adjoint and idempotent.
    pub fn is_projection(&self) -> bool {
        self.adjoint() == *self && self.compose(self) == *self
    }
}

impl Add for &FockOperator {
    type Output = FockOperator;
    fn add(self, rhs: Self) -> FockOperator {
        self.plus(rhs)
    }
}

impl Sub for &FockOperator {
    type Output = FockOperator;
    fn sub(self, rhs: Self) -> FockOperator {
        self.minus(rhs)
    }
}

impl Mul for &FockOperator {
    type Output = FockOperator;
    fn mul(self, rhs: Self) -> FockOperator {
        self.compose(rhs)
    }
}

impl Neg for &FockOperator {
    type Output = FockOperator;
    fn neg(self) -> FockOperator {
        self.scale(&-Q::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn layout(depth: usize, dims: &[usize]) -> Arc<FockLayout> {
        let grams = dims.iter().map(|&d| GramForm::identity(d)).collect();
        Arc::new(FockLayout::new(depth, grams).unwrap())
    }

    #[test]
    fn word_indexing_round_trips() {
        for comp in 0..16 {
            let (level, word) = FockLayout::word(comp);
            assert_eq!(FockLayout::component(level, &word), comp);
        }
        assert_eq!(FockLayout::component(3, &[Leg::One, Leg::Two]), 5);
        assert_eq!(FockLayout::component(3, &[Leg::Two, Leg::One]), 6);
        assert_eq!(FockLayout::components_at(3), 4..8);
    }

    #[test]
    fn locate_finds_component() {
        let l = layout(2, &[2, 1, 3, 1]);
        assert_eq!(l.locate(0), (0, 0));
        assert_eq!(l.locate(2), (1, 0));
        assert_eq!(l.locate(5), (2, 2));
        assert_eq!(l.locate(6), (3, 0));
    }

    #[test]
    fn degree_bookkeeping() {
        let l = layout(2, &[1, 1, 1, 1]);
        let mut up = FockOperator::zero(&l);
        up.set_block(1, 0, ExactMatrix::identity(1));
        up.set_block(2, 1, ExactMatrix::identity(1));
        assert_eq!(up.degree(), Some(Degree::Homogeneous(1)));
        assert_eq!(up.adjoint().degree(), Some(Degree::Homogeneous(-1)));
        let mixed = &up + &FockOperator::identity(&l);
        assert_eq!(mixed.degree(), Some(Degree::Mixed));
        assert_eq!(mixed.degree_zero_part(), FockOperator::identity(&l));
        assert!(up.degree_zero_part().is_zero());
        assert_eq!(FockOperator::zero(&l).degree(), None);
    }

    #[test]
    fn adjoint_respects_gram() {
        let grams = vec![
            GramForm::new(ExactMatrix::from_i64(&[&[2]])).unwrap(),
            GramForm::new(ExactMatrix::from_i64(&[&[1, 0], &[0, 3]])).unwrap(),
        ];
        let l = Arc::new(FockLayout::new(1, grams).unwrap());
        let mut x = FockOperator::zero(&l);
        x.set_block(1, 0, ExactMatrix::from_i64(&[&[1], &[1]]));
        let xs = x.adjoint();
        let (u, v) = (l.inject(0, &[Q::one()]), l.inject(1, &[Q::from(2), Q::i()]));
        assert_eq!(l.pair(&x.apply(&u), &v), l.pair(&u, &xs.apply(&v)));
        assert_eq!(xs.adjoint(), x);
    }

    #[test]
    fn witness_reports_global_position() {
        let l = layout(2, &[2, 1, 1, 1]);
        let mut x = FockOperator::zero(&l);
        x.set_block(2, 1, ExactMatrix::from_i64(&[&[5]]));
        let w = x.witness().unwrap();
        assert_eq!((w.row, w.col, w.row_level, w.col_level), (3, 2, 2, 1));
        assert_eq!(w.value, "5");
        assert!(x.restrict_cols(2, 2).is_zero());
    }
}
