//! Random generators for the test and benchmark suites: invertible matrices,
//! chain complexes, chain maps, strictly filtered complexes, barcodes, and
//! verified triangle data.
//!
//! Constraint satisfaction is constructive throughout. Differentials with
//! `d² = 0` come from conjugating a canonical pairing; filtered differentials
//! are sampled from the solution space of the chain condition under the
//! strict filtration mask; triangle data starts from the cofiber model of a
//! random chain map, which satisfies the detection identities on the nose,
//! and is then disguised by nullhomotopic perturbations, homotopy twists of
//! `q`, and random changes of basis.

use rand::Rng;

use crate::gf2::{sample_two_sided, BitMatrix, BitVec, F2System, GradedComplex};
use crate::persistence::{Bar, Barcode, FilteredComplex, FlatGenerator};
use crate::rational::rat;
use crate::triangle::TriangleData;

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> BitMatrix {
    BitMatrix::from_fn(rows, cols, |_, _| rng.random_bool(0.5))
}

pub fn random_invertible(rng: &mut impl Rng, n: usize) -> BitMatrix {
    loop {
        let m = random_matrix(rng, n, n);
        if m.inverse().is_some() {
            return m;
        }
    }
}

/// A random `n×n` matrix with `d² = 0`: a canonical pairing of `k` generator
/// pairs conjugated by a random basis change. The resulting homology has
/// dimension `n - 2k`.
pub fn random_square_zero(rng: &mut impl Rng, n: usize) -> BitMatrix {
    let k = if n < 2 { 0 } else { rng.random_range(0..=n / 2) };
    let mut canonical = BitMatrix::zeros(n, n);
    for i in 0..k {
        canonical.set(2 * i, 2 * i + 1, true);
    }
    let u = random_invertible(rng, n);
    let u_inv = u.inverse().expect("u is invertible");
    u.mul(&canonical).mul(&u_inv)
}

pub fn random_ungraded_complex(rng: &mut impl Rng, n: usize) -> GradedComplex {
    GradedComplex::ungraded(random_square_zero(rng, n)).expect("conjugated pairing squares to zero")
}

/// A random graded complex: differentials are sampled degree by degree from
/// the linear condition against the previously chosen one, with the two
/// wrap-around constraints handled on the last block.
pub fn random_graded_complex(rng: &mut impl Rng, period: usize, max_dim: usize) -> GradedComplex {
    assert!(period >= 2, "use random_ungraded_complex for period 1");
    let dims: Vec<usize> = (0..period).map(|_| rng.random_range(0..=max_dim)).collect();
    let shape = |d: usize| (dims[(d + period - 1) % period], dims[d]);
    let mut diffs: Vec<Option<BitMatrix>> = vec![None; period];
    // Highest block is free.
    {
        let (r, c) = shape(period - 1);
        diffs[period - 1] = Some(random_matrix(rng, r, c));
    }
    for d in (1..period - 1).rev() {
        let (r, c) = shape(d);
        let next = diffs[d + 1].as_ref().unwrap();
        // d_d ∘ d_{d+1} = 0: sample X with X · next = 0.
        let x = sample_matrix(rng, r, c, None, Some(next));
        diffs[d] = Some(x);
    }
    // d_0 must satisfy d_0 ∘ d_1 = 0 and d_{p-1} ∘ d_0 = 0.
    {
        let (r, c) = shape(0);
        let left = diffs[period - 1].as_ref().unwrap().clone();
        let right = if period > 1 { diffs[1].clone() } else { None };
        let x = sample_matrix(rng, r, c, Some(&left), right.as_ref());
        diffs[0] = Some(x);
    }
    let diffs: Vec<BitMatrix> = diffs.into_iter().map(Option::unwrap).collect();
    GradedComplex::new(period, dims, diffs).expect("construction satisfies d² = 0")
}

/// Samples `X` (rows×cols) with `left · X = 0` and/or `X · right = 0`.
fn sample_matrix(
    rng: &mut impl Rng,
    rows: usize,
    cols: usize,
    left: Option<&BitMatrix>,
    right: Option<&BitMatrix>,
) -> BitMatrix {
    let vars = rows * cols;
    let idx = |i: usize, j: usize| i * cols + j;
    let mut sys = F2System::new(vars);
    if let Some(l) = left {
        assert_eq!(l.cols(), rows);
        for a in 0..l.rows() {
            for j in 0..cols {
                let mut coeffs = BitVec::zeros(vars);
                for i in 0..rows {
                    if l.get(a, i) {
                        coeffs.set(idx(i, j), true);
                    }
                }
                sys.push(coeffs, false);
            }
        }
    }
    if let Some(r) = right {
        assert_eq!(r.rows(), cols);
        for i in 0..rows {
            for b in 0..r.cols() {
                let mut coeffs = BitVec::zeros(vars);
                for j in 0..cols {
                    if r.get(j, b) {
                        coeffs.set(idx(i, j), true);
                    }
                }
                sys.push(coeffs, false);
            }
        }
    }
    let x = sys.sample_solution(rng).expect("homogeneous system is solvable");
    BitMatrix::from_fn(rows, cols, |i, j| x.get(idx(i, j)))
}

/// A random chain map between graded complexes of the same period, sampled
/// jointly across the degree blocks.
pub fn random_chain_map_blocks(
    rng: &mut impl Rng,
    source: &GradedComplex,
    target: &GradedComplex,
    degree: i64,
) -> Vec<BitMatrix> {
    let p = source.period();
    assert_eq!(p, target.period());
    let pi = p as i64;
    let rows: Vec<usize> = (0..pi).map(|d| target.dim(d + degree)).collect();
    let cols: Vec<usize> = (0..pi).map(|d| source.dim(d)).collect();
    let offsets: Vec<usize> = {
        let mut acc = 0;
        let mut out = Vec::with_capacity(p + 1);
        for d in 0..p {
            out.push(acc);
            acc += rows[d] * cols[d];
        }
        out.push(acc);
        out
    };
    let vars = offsets[p];
    let idx = |d: usize, i: usize, j: usize| offsets[d] + i * cols[d] + j;
    let mut sys = F2System::new(vars);
    // For each degree: target.d(d+degree) ∘ F[d] = F[d-1] ∘ source.d(d).
    for d in 0..pi {
        let du = d as usize;
        let dm1 = (d - 1).rem_euclid(pi) as usize;
        let tgt_diff = target.differential(d + degree);
        let src_diff = source.differential(d);
        let eq_rows = tgt_diff.rows();
        let eq_cols = cols[du];
        for a in 0..eq_rows {
            for j in 0..eq_cols {
                let mut coeffs = BitVec::zeros(vars);
                for i in 0..rows[du] {
                    if tgt_diff.get(a, i) {
                        let k = idx(du, i, j);
                        coeffs.set(k, !coeffs.get(k));
                    }
                }
                for k2 in 0..cols[dm1] {
                    if src_diff.get(k2, j) {
                        let k = idx(dm1, a, k2);
                        coeffs.set(k, !coeffs.get(k));
                    }
                }
                sys.push(coeffs, false);
            }
        }
    }
    let x = sys.sample_solution(rng).expect("zero map always satisfies the condition");
    (0..p)
        .map(|d| BitMatrix::from_fn(rows[d], cols[d], |i, j| x.get(idx(d, i, j))))
        .collect()
}

/// A random strictly filtered complex with at most `max_gens` generators.
/// Gradings spread over several periods so translate bookkeeping is
/// exercised; differentials are sampled under the strict filtration mask with
/// `d² = 0` maintained grading by grading.
pub fn random_filtered_complex(rng: &mut impl Rng, max_gens: usize) -> FilteredComplex {
    let n = rng.random_range(0..=max_gens);
    // Two regimes: narrow gradings give dense boundary blocks, wide gradings
    // exercise the translate bookkeeping across periods.
    let narrow = rng.random_bool(0.5);
    let mut generators = Vec::with_capacity(n);
    for i in 0..n {
        let grading =
            if narrow { rng.random_range(0..=3) } else { rng.random_range(-6..=13) };
        let cs = rat(rng.random_range(-36..=36), rng.random_range(1..=12));
        generators.push(FlatGenerator { label: format!("g{i}"), grading, cs });
    }
    // Group by grading, descending.
    let mut gradings: Vec<i64> = generators.iter().map(|g| g.grading).collect();
    gradings.sort_unstable();
    gradings.dedup();
    gradings.reverse();
    let at = |g: i64| -> Vec<usize> {
        (0..n).filter(|&i| generators[i].grading == g).collect()
    };
    let mut pairs: Vec<(String, String)> = Vec::new();
    let mut previous: Option<(i64, Vec<usize>, BitMatrix)> = None;
    for &g in &gradings {
        let sources = at(g);
        let targets = at(g - 1);
        if targets.is_empty() {
            previous = None;
            continue;
        }
        let rows = targets.len();
        let cols = sources.len();
        let vars = rows * cols;
        let idx = |i: usize, j: usize| i * cols + j;
        let mut sys = F2System::new(vars);
        // Strict filtration mask: an entry is allowed only if cs drops.
        for (i, &t) in targets.iter().enumerate() {
            for (j, &s) in sources.iter().enumerate() {
                if generators[t].cs >= generators[s].cs {
                    let mut coeffs = BitVec::zeros(vars);
                    coeffs.set(idx(i, j), true);
                    sys.push(coeffs, false);
                }
            }
        }
        // d² = 0 against the block above, when it exists and lands here.
        if let Some((pg, psources, pmatrix)) = &previous {
            if *pg == g + 1 {
                // pmatrix: sources(g+1) -> sources(g); rows match `sources`.
                for (i, _) in targets.iter().enumerate() {
                    for (b, _) in psources.iter().enumerate() {
                        let mut coeffs = BitVec::zeros(vars);
                        for (j, _) in sources.iter().enumerate() {
                            if pmatrix.get(j, b) {
                                coeffs.set(idx(i, j), true);
                            }
                        }
                        sys.push(coeffs, false);
                    }
                }
            }
        }
        let x = sys.sample_solution(rng).expect("zero differential is admissible");
        let block = BitMatrix::from_fn(rows, cols, |i, j| x.get(idx(i, j)));
        for (i, &t) in targets.iter().enumerate() {
            for (j, &s) in sources.iter().enumerate() {
                if block.get(i, j) {
                    pairs.push((generators[s].label.clone(), generators[t].label.clone()));
                }
            }
        }
        previous = Some((g, sources, block));
    }
    FilteredComplex::new(generators, &pairs).expect("construction respects the validation rules")
}

/// A random barcode: bars over a wide degree range, finite or infinite.
pub fn random_barcode(rng: &mut impl Rng, max_bars: usize) -> Barcode {
    let n = rng.random_range(0..=max_bars);
    let bars = (0..n)
        .map(|_| {
            let degree = rng.random_range(-8..16);
            let birth = rat(rng.random_range(-24..=24), rng.random_range(1..=8));
            let death = if rng.random_bool(0.5) {
                None
            } else {
                Some(&birth + rat(rng.random_range(1..=16), rng.random_range(1..=4)))
            };
            Bar { degree, birth, death }
        })
        .collect();
    Barcode::new(bars).expect("births precede deaths by construction")
}

fn cofiber_inclusion(n_a: usize, n_b: usize) -> BitMatrix {
    BitMatrix::from_fn(n_a + n_b, n_b, |i, j| i == n_a + j)
}

fn cofiber_projection(n_a: usize, n_b: usize) -> BitMatrix {
    BitMatrix::from_fn(n_a, n_a + n_b, |i, j| i == j)
}

/// Verified triangle data of total dimension at most `max_total_dim`.
///
/// Starts from the cofiber model of a random chain map `phi: A -> B` (with
/// the mapping cone at the third vertex and the canonical section/projection
/// homotopies), then applies three randomizations that preserve the
/// identities exactly: nullhomotopic perturbations of `g` absorbed by `h`,
/// a homotopy twist of `q` witnessed by a random `s`, and a change of basis
/// at every vertex. The witnesses are attached with probability 1/2.
pub fn random_triangle_data(rng: &mut impl Rng, max_total_dim: usize) -> TriangleData {
    let budget = max_total_dim / 2;
    let n_a = rng.random_range(0..=budget);
    let n_b = rng.random_range(0..=budget.saturating_sub(n_a));
    let a = random_square_zero(rng, n_a);
    let b = random_square_zero(rng, n_b);
    let phi = sample_two_sided(&b, &a, &BitMatrix::zeros(n_b, n_a), rng)
        .expect("zero is a chain map");
    // Cone differential [[dA, 0], [phi, dB]].
    let n_k = n_a + n_b;
    let top = a.hstack(&BitMatrix::zeros(n_a, n_b));
    let bottom = phi.hstack(&b);
    let k = top.vstack(&bottom);

    // Placement: A at slot pa, B one step down, the cone another step down.
    let pa = rng.random_range(0..3usize);
    let pb = (pa + 2) % 3;
    let pk = (pa + 1) % 3;
    let mut dims = [0usize; 3];
    dims[pa] = n_a;
    dims[pb] = n_b;
    dims[pk] = n_k;
    let mut d: [BitMatrix; 3] = core::array::from_fn(|_| BitMatrix::zeros(0, 0));
    d[pa] = a.clone();
    d[pb] = b.clone();
    d[pk] = k.clone();
    let mut f: [BitMatrix; 3] = core::array::from_fn(|_| BitMatrix::zeros(0, 0));
    f[pa] = phi.clone();
    f[pb] = cofiber_inclusion(n_a, n_b);
    f[pk] = cofiber_projection(n_a, n_b);
    let mut g: [BitMatrix; 3] = core::array::from_fn(|_| BitMatrix::zeros(0, 0));
    // A -> Cone: the canonical section (id, 0).
    g[pa] = BitMatrix::from_fn(n_k, n_a, |i, j| i == j);
    g[pb] = BitMatrix::zeros(n_a, n_b);
    // Cone -> B: the second projection (0, id).
    g[pk] = BitMatrix::from_fn(n_b, n_k, |i, j| j == n_a + i);
    let mut h: [BitMatrix; 3] =
        core::array::from_fn(|i| BitMatrix::zeros(dims[i], dims[i]));
    let mut q: [BitMatrix; 3] = core::array::from_fn(|i| BitMatrix::identity(dims[i]));

    let down = |i: usize, s: usize| (i + 3 - s) % 3;

    // Nullhomotopic perturbation of g. Perturbing g[i] by d·w + w·d feeds
    // into the last identity at slot i (through f[i-2]·g[i]) and at slot i+1
    // (through g[i]·f[i+1]); adding f[i-2]·w to h[i] and w·f[i+1] to h[i+1]
    // contributes the same exact terms once more, so the two cancel over
    // GF(2) and the identity is preserved.
    for i in 0..3 {
        let w = random_matrix(rng, dims[down(i, 2)], dims[i]);
        let delta_g = d[down(i, 2)].mul(&w).add(&w.mul(&d[i]));
        g[i] = g[i].add(&delta_g);
        h[i] = h[i].add(&f[down(i, 2)].mul(&w));
        let up = (i + 1) % 3;
        h[up] = h[up].add(&w.mul(&f[up]));
    }
    // Homotopy twist of q with witness s; h absorbs s directly.
    let mut s: [BitMatrix; 3] = core::array::from_fn(|i| BitMatrix::zeros(dims[i], dims[i]));
    for i in 0..3 {
        let si = random_matrix(rng, dims[i], dims[i]);
        let twist = d[i].mul(&si).add(&si.mul(&d[i]));
        q[i] = q[i].add(&twist);
        h[i] = h[i].add(&si);
        s[i] = si;
    }
    // Random change of basis at every vertex.
    let u: [BitMatrix; 3] = core::array::from_fn(|i| random_invertible(rng, dims[i]));
    let u_inv: [BitMatrix; 3] = core::array::from_fn(|i| u[i].inverse().expect("invertible"));
    let conj = |m: &BitMatrix, tgt: usize, src: usize| u[tgt].mul(m).mul(&u_inv[src]);
    let d2: [BitMatrix; 3] = core::array::from_fn(|i| conj(&d[i], i, i));
    let f2: [BitMatrix; 3] = core::array::from_fn(|i| conj(&f[i], down(i, 1), i));
    let g2: [BitMatrix; 3] = core::array::from_fn(|i| conj(&g[i], down(i, 2), i));
    let h2: [BitMatrix; 3] = core::array::from_fn(|i| conj(&h[i], i, i));
    let q2: [BitMatrix; 3] = core::array::from_fn(|i| conj(&q[i], i, i));
    let s2: [BitMatrix; 3] = core::array::from_fn(|i| conj(&s[i], i, i));

    let homotopies = rng.random_bool(0.5).then_some(s2);
    TriangleData::new(d2, f2, g2, h2, q2, homotopies)
        .expect("cofiber construction has consistent shapes")
}
