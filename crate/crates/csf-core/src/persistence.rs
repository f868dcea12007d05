//! Filtered chain complexes with 8-periodic translation, their sublevel
//! homology, and barcodes.
//!
//! A complex is given by monomial generators carrying an integer grading and
//! an exact rational filtration value, plus a strictly filtered degree `-1`
//! differential over GF(2). The formal translation `t` raises the grading by 8
//! and the filtration value by 1; a generator is stored once and its
//! translates are materialized on demand. For a fixed grading `d` each
//! generator contributes at most one translate, which keeps every computation
//! finite.
//!
//! Conventions fixed here (they matter for reproducibility):
//! - sublevel sets are closed (`cs <= r`), the right-continuous convention at
//!   critical values;
//! - reduction columns are ordered by `(cs, label)` ascending;
//! - the differential must strictly decrease `cs` on every pair, so every bar
//!   has `birth < death` and no zero-length bars arise.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::gf2::{BitMatrix, BitVec};
use crate::rational::{display_rat, Rat};

/// The grading shift of the formal translation `t`.
pub const PERIOD: i64 = 8;

/// A monomial generator: label, integer grading, exact filtration value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatGenerator {
    pub label: String,
    pub grading: i64,
    pub cs: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("duplicate generator label `{0}`")]
    DuplicateLabel(String),
    #[error("boundary pair references unknown label `{0}`")]
    UnknownLabel(String),
    #[error("boundary pair ({from},{to}): grading must drop by exactly 1 ({from_grading} -> {to_grading})")]
    GradingStep { from: String, to: String, from_grading: i64, to_grading: i64 },
    #[error("boundary pair ({from},{to}): filtration must strictly decrease ({from_cs} -> {to_cs})")]
    NonStrictFiltration { from: String, to: String, from_cs: String, to_cs: String },
    #[error("differential does not square to zero: d²({from}) contains {to}")]
    BoundarySquared { from: String, to: String },
}

/// A validated filtered complex.
#[derive(Clone, Debug)]
pub struct FilteredComplex {
    generators: Vec<FlatGenerator>,
    /// Differential pairs as generator indices `(from, to)`.
    pairs: Vec<(usize, usize)>,
}

/// One generator's translate in a fixed grading slice.
#[derive(Clone, Debug)]
struct SliceEntry {
    gen: usize,
    cs: Rat,
}

impl FilteredComplex {
    pub fn new(
        generators: Vec<FlatGenerator>,
        boundary: &[(String, String)],
    ) -> Result<Self, ValidationError> {
        let mut by_label: BTreeMap<&str, usize> = BTreeMap::new();
        for (i, g) in generators.iter().enumerate() {
            if by_label.insert(g.label.as_str(), i).is_some() {
                return Err(ValidationError::DuplicateLabel(g.label.clone()));
            }
        }
        let mut pairs = Vec::with_capacity(boundary.len());
        let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
        for (from, to) in boundary {
            let &fi = by_label
                .get(from.as_str())
                .ok_or_else(|| ValidationError::UnknownLabel(from.clone()))?;
            let &ti = by_label
                .get(to.as_str())
                .ok_or_else(|| ValidationError::UnknownLabel(to.clone()))?;
            let (f, t) = (&generators[fi], &generators[ti]);
            if t.grading != f.grading - 1 {
                return Err(ValidationError::GradingStep {
                    from: from.clone(),
                    to: to.clone(),
                    from_grading: f.grading,
                    to_grading: t.grading,
                });
            }
            if t.cs >= f.cs {
                return Err(ValidationError::NonStrictFiltration {
                    from: from.clone(),
                    to: to.clone(),
                    from_cs: display_rat(&f.cs),
                    to_cs: display_rat(&t.cs),
                });
            }
            if seen.insert((fi, ti)) {
                pairs.push((fi, ti));
            }
        }
        let complex = FilteredComplex { generators, pairs };
        complex.check_square()?;
        Ok(complex)
    }

    /// `d² = 0` on the label basis: mod-2 count of length-two paths.
    fn check_square(&self) -> Result<(), ValidationError> {
        let n = self.generators.len();
        let mut adj = BitMatrix::zeros(n, n);
        for &(f, t) in &self.pairs {
            adj.set(t, f, true);
        }
        let sq = adj.mul(&adj);
        for from in 0..n {
            for to in 0..n {
                if sq.get(to, from) {
                    return Err(ValidationError::BoundarySquared {
                        from: self.generators[from].label.clone(),
                        to: self.generators[to].label.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn generators(&self) -> &[FlatGenerator] {
        &self.generators
    }

    pub fn boundary_pairs(&self) -> impl Iterator<Item = (&str, &str)> {
        self.pairs
            .iter()
            .map(|&(f, t)| (self.generators[f].label.as_str(), self.generators[t].label.as_str()))
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// All translates sitting in grading exactly `d`, ordered by `(cs, label)`.
    /// Generator `g` appears iff `grading(g) ≡ d (mod 8)`, with translated
    /// filtration value `cs + (d - grading)/8`.
    fn slice(&self, d: i64) -> Vec<SliceEntry> {
        let mut entries: Vec<SliceEntry> = self
            .generators
            .iter()
            .enumerate()
            .filter(|(_, g)| (d - g.grading).rem_euclid(PERIOD) == 0)
            .map(|(i, g)| {
                let k = (d - g.grading) / PERIOD;
                SliceEntry { gen: i, cs: &g.cs + Rat::from_integer(k.into()) }
            })
            .collect();
        entries.sort_by(|a, b| {
            a.cs.cmp(&b.cs)
                .then_with(|| self.generators[a.gen].label.cmp(&self.generators[b.gen].label))
        });
        entries
    }

    /// Boundary matrix from grading `d` to grading `d-1`, in slice order.
    /// Translate bookkeeping is free here: a pair `(x, y)` always connects
    /// translates with the same power of `t`.
    fn boundary_block(&self, d: i64) -> (BitMatrix, Vec<SliceEntry>, Vec<SliceEntry>) {
        let cols = self.slice(d);
        let rows = self.slice(d - 1);
        let row_of: BTreeMap<usize, usize> =
            rows.iter().enumerate().map(|(i, e)| (e.gen, i)).collect();
        let mut m = BitMatrix::zeros(rows.len(), cols.len());
        for (j, ce) in cols.iter().enumerate() {
            for &(f, t) in &self.pairs {
                if f == ce.gen {
                    let i = row_of[&t];
                    m.set(i, j, true);
                }
            }
        }
        (m, rows, cols)
    }

    /// Filtration values at which the degree-`d` picture can change: the
    /// translate values in gradings `d` and `d+1`, sorted and deduplicated.
    pub fn critical_values(&self, d: i64) -> Vec<Rat> {
        let mut vals: Vec<Rat> = self
            .slice(d)
            .into_iter()
            .chain(self.slice(d + 1))
            .map(|e| e.cs)
            .collect();
        vals.sort();
        vals.dedup();
        vals
    }

    /// Dimension of the degree-`d` homology of the closed sublevel complex at
    /// level `r`. The empty subcomplex gives 0.
    pub fn sublevel_homology(&self, r: &Rat, d: i64) -> usize {
        let (md, _, cols_d) = self.boundary_block(d);
        let (md1, _, cols_d1) = self.boundary_block(d + 1);
        let keep_d: Vec<usize> = (0..cols_d.len()).filter(|&j| cols_d[j].cs <= *r).collect();
        let keep_d1: Vec<usize> = (0..cols_d1.len()).filter(|&j| cols_d1[j].cs <= *r).collect();
        let rank_out = md.select_columns(&keep_d).rank();
        let rank_in = md1.select_columns(&keep_d1).rank();
        keep_d.len() - rank_out - rank_in
    }

    /// Rank of the connecting map from level `r` to level `r2` in degree `d`,
    /// computed directly from cycle and boundary subspaces (no barcode).
    pub fn sublevel_map_rank(&self, r: &Rat, r2: &Rat, d: i64) -> usize {
        assert!(r <= r2, "sublevel_map_rank requires r <= r2");
        let (md, _, cols_d) = self.boundary_block(d);
        let (md1, _, cols_d1) = self.boundary_block(d + 1);
        let keep_r: Vec<usize> = (0..cols_d.len()).filter(|&j| cols_d[j].cs <= *r).collect();
        // Cycles at level r, embedded in the ambient slice coordinates.
        let restricted = md.select_columns(&keep_r);
        let kernel = restricted.kernel_basis();
        let mut cycle_rows = Vec::new();
        for i in 0..kernel.rows() {
            let mut v = BitVec::zeros(cols_d.len());
            for (jj, &j) in keep_r.iter().enumerate() {
                if kernel.get(i, jj) {
                    v.set(j, true);
                }
            }
            cycle_rows.push(v);
        }
        let cycles = BitMatrix::from_rows(&cycle_rows, cols_d.len());
        // Boundaries at level r2, as rows in the same coordinates.
        let keep_r2: Vec<usize> = (0..cols_d1.len()).filter(|&j| cols_d1[j].cs <= *r2).collect();
        let boundaries = md1.select_columns(&keep_r2).transpose();
        let dim_z = cycles.rank();
        let dim_b = boundaries.rank();
        let dim_sum = cycles.vstack(&boundaries).rank();
        // rank i_r^{r2} = dim Z_r - dim(Z_r ∩ B_{r2})
        dim_z - (dim_z + dim_b - dim_sum)
    }

    /// The barcode over the fundamental degree window `0..=7`. Bars in degree
    /// `d + 8` are the degree-`d` bars shifted by `+1`; queries outside the
    /// window are answered through that shift.
    pub fn barcode(&self) -> Barcode {
        let mut bars = Vec::new();
        for d in 0..PERIOD {
            let (md, _, cols_d) = self.boundary_block(d);
            let (md1, rows_d, cols_d1) = self.boundary_block(d + 1);
            debug_assert_eq!(rows_d.len(), cols_d.len());
            let red_d = reduce_columns(&md);
            let red_d1 = reduce_columns(&md1);
            let mut killed = vec![false; cols_d.len()];
            for &(i, j) in &red_d1.pairs {
                killed[i] = true;
                debug_assert!(red_d.zero_cols.contains(&i), "pivot row must be a cycle column");
                bars.push(Bar {
                    degree: d,
                    birth: cols_d[i].cs.clone(),
                    death: Some(cols_d1[j].cs.clone()),
                });
            }
            for &j in &red_d.zero_cols {
                if !killed[j] {
                    bars.push(Bar { degree: d, birth: cols_d[j].cs.clone(), death: None });
                }
            }
        }
        Barcode::new(bars).expect("reduction produces valid bars")
    }
}

struct Reduction {
    /// `(row, col)` pivot pairs in the order the columns got their pivots.
    pairs: Vec<(usize, usize)>,
    /// Columns that reduced to zero (cycle columns), ascending.
    zero_cols: Vec<usize>,
}

/// Standard persistence column reduction. Columns are processed left to
/// right; the pivot of a column is its lowest (largest-index) nonzero row.
fn reduce_columns(m: &BitMatrix) -> Reduction {
    let (rows, cols) = (m.rows(), m.cols());
    let width = rows.div_ceil(64).max(1);
    let mut data: Vec<Vec<u64>> = (0..cols)
        .map(|j| {
            let mut words = vec![0u64; width];
            for i in 0..rows {
                if m.get(i, j) {
                    words[i / 64] |= 1 << (i % 64);
                }
            }
            words
        })
        .collect();
    let low = |words: &[u64]| -> Option<usize> {
        for (wi, &w) in words.iter().enumerate().rev() {
            if w != 0 {
                return Some(wi * 64 + 63 - w.leading_zeros() as usize);
            }
        }
        None
    };
    let mut pivot_owner: Vec<Option<usize>> = vec![None; rows];
    let mut pairs = Vec::new();
    let mut zero_cols = Vec::new();
    for j in 0..cols {
        loop {
            match low(&data[j]) {
                None => {
                    zero_cols.push(j);
                    break;
                }
                Some(l) => match pivot_owner[l] {
                    Some(owner) => {
                        let (lo, hi) = data.split_at_mut(j);
                        let (a, b) = (&lo[owner], &mut hi[0]);
                        for (x, y) in b.iter_mut().zip(a.iter()) {
                            *x ^= y;
                        }
                    }
                    None => {
                        pivot_owner[l] = Some(j);
                        pairs.push((l, j));
                        break;
                    }
                },
            }
        }
    }
    Reduction { pairs, zero_cols }
}

/// One bar: degree, birth, and death (`None` = infinite).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bar {
    pub degree: i64,
    pub birth: Rat,
    pub death: Option<Rat>,
}

impl Bar {
    /// Whether the class is alive at level `r`: `birth <= r < death`.
    pub fn contains(&self, r: &Rat) -> bool {
        self.birth <= *r && self.death.as_ref().is_none_or(|d| r < d)
    }

    pub fn shifted(&self, k: i64) -> Bar {
        let delta = Rat::from_integer(k.into());
        Bar {
            degree: self.degree + PERIOD * k,
            birth: &self.birth + &delta,
            death: self.death.as_ref().map(|d| d + &delta),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BarcodeError {
    #[error("bar in degree {degree} has birth {birth} >= death {death}")]
    EmptyBar { degree: i64, birth: String, death: String },
    #[error("connecting rank query needs r <= r2")]
    BadLevelPair,
}

/// A barcode, stored on the fundamental degree window `0..=7`.
///
/// Bars handed in at other degrees are normalized into the window by the
/// translation rule (degree `-8k`, endpoints `-k`).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Barcode {
    bars: Vec<Bar>,
}

impl Barcode {
    pub fn new(bars: Vec<Bar>) -> Result<Self, BarcodeError> {
        let mut normalized = Vec::with_capacity(bars.len());
        for bar in bars {
            if let Some(d) = &bar.death {
                if bar.birth >= *d {
                    return Err(BarcodeError::EmptyBar {
                        degree: bar.degree,
                        birth: display_rat(&bar.birth),
                        death: display_rat(d),
                    });
                }
            }
            let k = bar.degree.div_euclid(PERIOD);
            normalized.push(bar.shifted(-k));
        }
        normalized.sort_by(|a, b| {
            (a.degree, &a.birth, &a.death).cmp(&(b.degree, &b.birth, &b.death))
        });
        Ok(Barcode { bars: normalized })
    }

    pub fn empty() -> Self {
        Barcode { bars: Vec::new() }
    }

    /// Bars over the fundamental window, sorted.
    pub fn bars(&self) -> &[Bar] {
        &self.bars
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    /// Bars in an arbitrary degree, materialized through the shift rule.
    pub fn bars_in_degree(&self, d: i64) -> Vec<Bar> {
        let k = d.div_euclid(PERIOD);
        let w = d.rem_euclid(PERIOD);
        self.bars
            .iter()
            .filter(|b| b.degree == w)
            .map(|b| b.shifted(k))
            .collect()
    }

    /// Dimension of the filtered piece at level `r` in degree `d`.
    pub fn dim_at(&self, r: &Rat, d: i64) -> usize {
        self.bars_in_degree(d).iter().filter(|b| b.contains(r)).count()
    }

    /// Rank of the connecting map from level `r` to `r2` in degree `d`: the
    /// number of bars containing both endpoints.
    pub fn connecting_rank(&self, r: &Rat, r2: &Rat, d: i64) -> Result<usize, BarcodeError> {
        if r > r2 {
            return Err(BarcodeError::BadLevelPair);
        }
        Ok(self
            .bars_in_degree(d)
            .iter()
            .filter(|b| b.contains(r) && b.contains(r2))
            .count())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn gens(table: &[(&str, i64, (i64, i64))]) -> Vec<FlatGenerator> {
        table
            .iter()
            .map(|&(l, g, (p, q))| FlatGenerator {
                label: l.to_string(),
                grading: g,
                cs: rat(p, q),
            })
            .collect()
    }

    fn pairs(list: &[(&str, &str)]) -> Vec<(String, String)> {
        list.iter().map(|&(a, b)| (a.to_string(), b.to_string())).collect()
    }

    fn poincare() -> FilteredComplex {
        FilteredComplex::new(gens(&[("alpha", 1, (1, 120)), ("beta", 5, (49, 120))]), &[]).unwrap()
    }

    fn two_generator() -> FilteredComplex {
        // x (gr 1, cs 3/4) -> y (gr 0, cs 1/4)
        FilteredComplex::new(
            gens(&[("x", 1, (3, 4)), ("y", 0, (1, 4))]),
            &pairs(&[("x", "y")]),
        )
        .unwrap()
    }

    #[test]
    fn sublevel_homology_of_poincare_sphere() {
        let c = poincare();
        assert_eq!(c.sublevel_homology(&rat(0, 1), 1), 0);
        assert_eq!(c.sublevel_homology(&rat(1, 120), 1), 1);
    }

    #[test]
    fn sublevel_homology_of_two_generator_complex() {
        let c = two_generator();
        assert_eq!(c.sublevel_homology(&rat(1, 2), 0), 1);
        assert_eq!(c.sublevel_homology(&rat(1, 1), 0), 0);
    }

    #[test]
    fn barcode_of_poincare_sphere() {
        let b = poincare().barcode();
        assert_eq!(
            b.bars(),
            &[
                Bar { degree: 1, birth: rat(1, 120), death: None },
                Bar { degree: 5, birth: rat(49, 120), death: None },
            ]
        );
    }

    #[test]
    fn barcode_of_two_generator_complex() {
        let b = two_generator().barcode();
        assert_eq!(b.bars(), &[Bar { degree: 0, birth: rat(1, 4), death: Some(rat(3, 4)) }]);
        // Brute-force cross-check at all critical values.
        let c = two_generator();
        for d in 0..8 {
            for r in c.critical_values(d) {
                assert_eq!(b.dim_at(&r, d), c.sublevel_homology(&r, d), "d={d} r={r}");
            }
        }
    }

    #[test]
    fn barcode_of_empty_complex_is_empty() {
        let c = FilteredComplex::new(vec![], &[]).unwrap();
        assert!(c.barcode().is_empty());
    }

    #[test]
    fn connecting_rank_basics() {
        let b = two_generator().barcode();
        // r = r2 is the identity map, so rank = dimension.
        let r = rat(1, 2);
        assert_eq!(b.connecting_rank(&r, &r, 0).unwrap(), b.dim_at(&r, 0));
        assert_eq!(b.connecting_rank(&rat(1, 2), &rat(7, 8), 0).unwrap(), 0);
        assert!(b.connecting_rank(&rat(1, 1), &rat(0, 1), 0).is_err());

        let p = poincare().barcode();
        assert_eq!(p.connecting_rank(&rat(1, 120), &rat(100, 1), 1).unwrap(), 1);
    }

    #[test]
    fn finiteness_below_minimal_value() {
        let c = poincare();
        assert_eq!(c.sublevel_homology(&rat(-1000, 1), 1), 0);
        let b = c.barcode();
        assert_eq!(b.dim_at(&rat(0, 1), 1), 0);
    }

    #[test]
    fn barcode_shift_rule_is_exact() {
        let b = poincare().barcode();
        let lower = b.bars_in_degree(1);
        let upper = b.bars_in_degree(9);
        assert_eq!(upper.len(), lower.len());
        for (u, l) in upper.iter().zip(&lower) {
            assert_eq!(u.birth, &l.birth + rat(1, 1));
            assert_eq!(u.degree, l.degree + 8);
        }
        // dim at shifted levels agrees.
        assert_eq!(b.dim_at(&rat(121, 120), 9), 1);
        assert_eq!(b.dim_at(&rat(1, 120), 9), 0);
    }

    #[test]
    fn translate_slices_cross_gradings() {
        // A generator at grading 9 contributes to grading 1 with cs - 1.
        let c = FilteredComplex::new(gens(&[("a", 9, (1, 2))]), &[]).unwrap();
        assert_eq!(c.sublevel_homology(&rat(-1, 2), 1), 1);
        assert_eq!(c.sublevel_homology(&rat(-3, 4), 1), 0);
        let b = c.barcode();
        assert_eq!(b.bars(), &[Bar { degree: 1, birth: rat(-1, 2), death: None }]);
    }

    #[test]
    fn validation_rejects_bad_input() {
        let dup = FilteredComplex::new(gens(&[("a", 0, (0, 1)), ("a", 1, (1, 1))]), &[]);
        assert!(matches!(dup, Err(ValidationError::DuplicateLabel(_))));

        let grading = FilteredComplex::new(
            gens(&[("x", 1, (1, 1)), ("y", 1, (0, 1))]),
            &pairs(&[("x", "y")]),
        );
        assert!(matches!(grading, Err(ValidationError::GradingStep { .. })));

        let strictness = FilteredComplex::new(
            gens(&[("x", 1, (1, 4)), ("y", 0, (1, 4))]),
            &pairs(&[("x", "y")]),
        );
        assert!(matches!(strictness, Err(ValidationError::NonStrictFiltration { .. })));

        let unknown =
            FilteredComplex::new(gens(&[("x", 1, (1, 1))]), &pairs(&[("x", "z")]));
        assert!(matches!(unknown, Err(ValidationError::UnknownLabel(_))));

        // A single length-two path a -> b -> c appears an odd number of
        // times, so d² != 0.
        let squared = FilteredComplex::new(
            gens(&[("a", 2, (3, 1)), ("b", 1, (2, 1)), ("c", 0, (1, 1))]),
            &pairs(&[("a", "b"), ("b", "c")]),
        );
        assert!(matches!(squared, Err(ValidationError::BoundarySquared { .. })));

        // The even version passes: two length-two paths from a to c.
        let ok = FilteredComplex::new(
            gens(&[
                ("a", 2, (3, 1)),
                ("b1", 1, (2, 1)),
                ("b2", 1, (5, 2)),
                ("c", 0, (1, 1)),
            ]),
            &pairs(&[("a", "b1"), ("a", "b2"), ("b1", "c"), ("b2", "c")]),
        );
        assert!(ok.is_ok());
    }

    #[test]
    fn direct_map_rank_agrees_on_two_generator_complex() {
        let c = two_generator();
        let b = c.barcode();
        let crit = c.critical_values(0);
        for (i, r) in crit.iter().enumerate() {
            for r2 in &crit[i..] {
                assert_eq!(
                    b.connecting_rank(r, r2, 0).unwrap(),
                    c.sublevel_map_rank(r, r2, 0),
                    "r={r} r2={r2}"
                );
            }
        }
    }
}
