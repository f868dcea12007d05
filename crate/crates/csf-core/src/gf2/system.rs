//! A small GF(2) linear-system builder.
//!
//! Several constructions here reduce to "find one/all solutions of a linear
//! system whose unknowns are matrix entries": chain-map sampling, homotopy
//! witnesses, and differential generation respecting a filtration mask. This
//! type collects equations, then solves or samples.

use rand::Rng;

use super::matrix::{BitMatrix, BitVec};

#[derive(Clone, Debug)]
pub struct F2System {
    vars: usize,
    rows: Vec<BitVec>,
    rhs: Vec<bool>,
}

impl F2System {
    pub fn new(vars: usize) -> Self {
        F2System { vars, rows: Vec::new(), rhs: Vec::new() }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn push(&mut self, coeffs: BitVec, rhs: bool) {
        assert_eq!(coeffs.len(), self.vars, "coefficient length mismatch");
        self.rows.push(coeffs);
        self.rhs.push(rhs);
    }

    fn matrix(&self) -> (BitMatrix, BitMatrix) {
        let a = BitMatrix::from_rows(&self.rows, self.vars);
        let mut b = BitMatrix::zeros(self.rows.len(), 1);
        for (i, &v) in self.rhs.iter().enumerate() {
            if v {
                b.set(i, 0, true);
            }
        }
        (a, b)
    }

    /// One particular solution with free variables zero, or `None`.
    pub fn solve(&self) -> Option<BitVec> {
        let (a, b) = self.matrix();
        let x = a.solve_columns(&b)?;
        Some(BitVec::from_fn(self.vars, |i| x.get(i, 0)))
    }

    /// Basis of the homogeneous solution space.
    pub fn kernel(&self) -> BitMatrix {
        let (a, _) = self.matrix();
        a.kernel_basis()
    }

    /// A uniformly perturbed solution: particular + random kernel combination.
    pub fn sample_solution(&self, rng: &mut impl Rng) -> Option<BitVec> {
        let mut x = self.solve()?;
        let k = self.kernel();
        for i in 0..k.rows() {
            if rng.random_bool(0.5) {
                x.xor_assign(&k.row(i));
            }
        }
        Some(x)
    }
}

fn two_sided_system(m: &BitMatrix, n: &BitMatrix, rhs: &BitMatrix) -> (F2System, usize, usize) {
    let (a, p) = (m.rows(), m.cols());
    let (q, b) = (n.rows(), n.cols());
    assert_eq!(rhs.rows(), a, "rhs row mismatch");
    assert_eq!(rhs.cols(), b, "rhs col mismatch");
    let vars = p * q;
    let idx = |i: usize, j: usize| i * q + j;
    let mut sys = F2System::new(vars);
    for alpha in 0..a {
        for beta in 0..b {
            let mut coeffs = BitVec::zeros(vars);
            // (M S)[alpha, beta] = sum_i M[alpha, i] S[i, beta]; needs beta < q.
            if beta < q {
                for i in 0..p {
                    if m.get(alpha, i) {
                        let k = idx(i, beta);
                        coeffs.set(k, !coeffs.get(k));
                    }
                }
            }
            // (S N)[alpha, beta] = sum_j S[alpha, j] N[j, beta]; needs alpha < p.
            if alpha < p {
                for j in 0..q {
                    if n.get(j, beta) {
                        let k = idx(alpha, j);
                        coeffs.set(k, !coeffs.get(k));
                    }
                }
            }
            sys.push(coeffs, rhs.get(alpha, beta));
        }
    }
    (sys, p, q)
}

fn unpack(x: &BitVec, p: usize, q: usize) -> BitMatrix {
    let mut s = BitMatrix::zeros(p, q);
    for i in 0..p {
        for j in 0..q {
            if x.get(i * q + j) {
                s.set(i, j, true);
            }
        }
    }
    s
}

/// Solves `M·S + S·N = RHS` for the unknown matrix `S`.
///
/// Shapes: `M: a×p`, `S: p×q`, `N: q×b`, `RHS: a×b`; the two products must
/// both be `a×b`, which forces `a = p` or `q = b` only in the square cases —
/// the general shapes are accepted as long as they are consistent.
pub fn solve_two_sided(m: &BitMatrix, n: &BitMatrix, rhs: &BitMatrix) -> Option<BitMatrix> {
    let (sys, p, q) = two_sided_system(m, n, rhs);
    sys.solve().map(|x| unpack(&x, p, q))
}

/// Like [`solve_two_sided`], but returns a random point of the solution
/// space.
pub fn sample_two_sided(
    m: &BitMatrix,
    n: &BitMatrix,
    rhs: &BitMatrix,
    rng: &mut impl Rng,
) -> Option<BitMatrix> {
    let (sys, p, q) = two_sided_system(m, n, rhs);
    sys.sample_solution(rng).map(|x| unpack(&x, p, q))
}
