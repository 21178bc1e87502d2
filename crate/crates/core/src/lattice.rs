//! Exact integer-lattice arithmetic for the transposed dilation matrix:
//! sublattice membership, digit coset representatives, the stable lattice
//! and the exact dilation test.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::{
    hermite_normal_form, integer_kernel, solve_rational, vec_is_zero, vec_sub, vec_zero, IntMat,
    IntVec,
};
use crate::poly;

/// Hard cap on |det A|: the coset layer materializes Sigma up front.
pub const MAX_DET: u64 = 100_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SystemError {
    #[error("matrix must be square, got {0}x{1}")]
    NotSquare(usize, usize),
    #[error("matrix must have nonzero determinant")]
    SingularMatrix,
    #[error("|det A| = {0} exceeds the supported bound {MAX_DET}")]
    DeterminantTooLarge(String),
    #[error("sigma must have exactly {expected} representatives, got {got}")]
    SigmaWrongSize { expected: u64, got: usize },
    #[error("sigma entry {0} has dimension {1}, expected {2}")]
    SigmaWrongDimension(usize, usize, usize),
    #[error("sigma must contain the zero vector")]
    SigmaMissingZero,
    #[error("sigma entries {0} and {1} are congruent mod B")]
    SigmaCongruentPair(usize, usize),
}

/// A sublattice of Z^d, stored as its canonical column Hermite basis.
/// Equal lattices compare equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Lattice {
    basis: IntMat,
}

impl Lattice {
    pub fn from_generators(dim: usize, generators: &[IntVec]) -> Self {
        let m = IntMat::from_columns(dim, generators);
        Lattice {
            basis: hermite_normal_form(&m).0,
        }
    }

    pub fn from_hnf_basis(basis: IntMat) -> Self {
        Lattice { basis }
    }

    pub fn zero(dim: usize) -> Self {
        Lattice {
            basis: IntMat::zero(dim, 0),
        }
    }

    pub fn full(dim: usize) -> Self {
        Lattice {
            basis: IntMat::identity(dim),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IntMat {
        &self.basis
    }

    pub fn basis_columns(&self) -> Vec<IntVec> {
        (0..self.basis.cols()).map(|j| self.basis.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    pub fn is_full(&self) -> bool {
        self.basis == IntMat::identity(self.dim())
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Integer coordinates of `v` in the stored basis, if `v` lies in the
    /// lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<IntVec> {
        if self.rank() == 0 {
            return vec_is_zero(v).then(Vec::new);
        }
        let sol = solve_rational(&self.basis, v)?;
        let mut out = Vec::with_capacity(sol.len());
        for c in sol {
            if !c.denom().is_one() {
                return None;
            }
            out.push(c.numer().clone());
        }
        Some(out)
    }

    /// Image under an integer matrix, re-canonicalized.
    pub fn map(&self, m: &IntMat) -> Lattice {
        let cols: Vec<IntVec> = (0..self.basis.cols())
            .map(|j| m.mul_vec(&self.basis.column(j)))
            .collect();
        Lattice::from_generators(m.rows(), &cols)
    }
}

/// Finite or infinite largest membership level of a vector in the chain
/// B^j Z^d.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MembershipIndex {
    Finite(u32),
    Infinite,
}

/// The integer matrix A with its transpose B = A^t, N = |det A|, the chosen
/// coset representatives Sigma for Z^d / B Z^d, and the cached lattice
/// decompositions every other module leans on.
#[derive(Clone, Debug)]
pub struct DilationSystem {
    dim: usize,
    a: IntMat,
    b: IntMat,
    n: u64,
    sigma: Vec<IntVec>,
    /// Column HNF of B and its transform: b * u_b = hnf_b.
    hnf_b: IntMat,
    u_b: IntMat,
    /// box representative mod B -> index into sigma
    sigma_index: HashMap<Vec<BigInt>, usize>,
    stable: Lattice,
    /// chi_u(B), the unit-factor part of the characteristic polynomial
    /// evaluated at B; its integer kernel is the stable lattice.
    unit_poly_at_b: IntMat,
    /// Action of B^{-1} on stable-lattice coordinates (unimodular integer
    /// matrix), when the stable lattice is nonzero.
    stable_inv_action: Option<IntMat>,
    dilation: bool,
}

impl DilationSystem {
    pub fn new(a: IntMat) -> Result<Self, SystemError> {
        Self::with_sigma(a, None)
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Result<Self, SystemError> {
        Self::new(IntMat::from_rows_i64(rows))
    }

    pub fn with_sigma(a: IntMat, sigma: Option<Vec<IntVec>>) -> Result<Self, SystemError> {
        if a.rows() != a.cols() {
            return Err(SystemError::NotSquare(a.rows(), a.cols()));
        }
        let dim = a.rows();
        let det = a.det();
        if det.is_zero() {
            return Err(SystemError::SingularMatrix);
        }
        let n: u64 = match det.abs().try_into() {
            Ok(n) if n <= MAX_DET => n,
            _ => return Err(SystemError::DeterminantTooLarge(det.abs().to_string())),
        };
        let b = a.transpose();
        let (hnf_b, u_b) = hermite_normal_form(&b);

        let sigma = match sigma {
            Some(s) => s,
            None => default_sigma(&hnf_b),
        };
        if sigma.len() as u64 != n {
            return Err(SystemError::SigmaWrongSize {
                expected: n,
                got: sigma.len(),
            });
        }
        let mut sigma_index = HashMap::new();
        for (i, s) in sigma.iter().enumerate() {
            if s.len() != dim {
                return Err(SystemError::SigmaWrongDimension(i, s.len(), dim));
            }
            let (rep, _) = box_reduce(&hnf_b, s);
            if let Some(&j) = sigma_index.get(&rep) {
                return Err(SystemError::SigmaCongruentPair(j, i));
            }
            sigma_index.insert(rep, i);
        }
        if !sigma.iter().any(|s| vec_is_zero(s)) {
            return Err(SystemError::SigmaMissingZero);
        }

        let char_b = b.char_poly();
        let factors = poly::factor_monic(&char_b);
        let mut unit_poly = vec![BigInt::one()];
        for (f, mult) in &factors {
            if f[0].abs().is_one() {
                for _ in 0..*mult {
                    unit_poly = poly::mul(&unit_poly, f);
                }
            }
        }
        let unit_poly_at_b = eval_poly_at_matrix(&unit_poly, &b);
        let stable = Lattice::from_hnf_basis(integer_kernel(&unit_poly_at_b));

        let stable_inv_action = if stable.rank() > 0 {
            // B restricted to the stable lattice, in basis coordinates, is
            // unimodular; store its integer inverse.
            let w = stable.basis();
            let r = stable.rank();
            let mut c = IntMat::zero(r, r);
            for j in 0..r {
                let img = b.mul_vec(&w.column(j));
                let coords = stable
                    .coordinates(&img)
                    .expect("stable lattice is B-invariant");
                for i in 0..r {
                    c.set(i, j, coords[i].clone());
                }
            }
            Some(inverse_unimodular(&c))
        } else {
            None
        };

        let dilation = {
            let rev = poly::reverse(&char_b);
            poly::all_roots_in_open_unit_disc(&rev)
        };

        Ok(DilationSystem {
            dim,
            a,
            b,
            n,
            sigma,
            hnf_b,
            u_b,
            sigma_index,
            stable,
            unit_poly_at_b,
            stable_inv_action,
            dilation,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix_a(&self) -> &IntMat {
        &self.a
    }

    pub fn matrix_b(&self) -> &IntMat {
        &self.b
    }

    /// N = |det A| = |det B|.
    pub fn det_abs(&self) -> u64 {
        self.n
    }

    pub fn sigma(&self) -> &[IntVec] {
        &self.sigma
    }

    /// True iff every eigenvalue of A has modulus strictly greater than 1,
    /// decided exactly by the Schur-Cohn descent on the reversed
    /// characteristic polynomial.
    pub fn is_dilation(&self) -> bool {
        self.dilation
    }

    /// B^{-1} x when x is in B Z^d.
    pub fn b_inverse(&self, x: &[BigInt]) -> Option<IntVec> {
        let (rep, t) = box_reduce(&self.hnf_b, x);
        if !vec_is_zero(&rep) {
            return None;
        }
        Some(self.u_b.mul_vec(&t))
    }

    /// True iff x lies in B^k Z^d.
    pub fn in_sublattice(&self, m: &[BigInt], k: u32) -> bool {
        self.preimage(m, k).is_some()
    }

    /// The unique x with B^k x = m, when it exists.
    pub fn preimage(&self, m: &[BigInt], k: u32) -> Option<IntVec> {
        let mut x = m.to_vec();
        for _ in 0..k {
            x = self.b_inverse(&x)?;
        }
        Some(x)
    }

    /// Index of the sigma representative congruent to x mod B Z^d.
    pub fn sigma_digit(&self, x: &[BigInt]) -> usize {
        let (rep, _) = box_reduce(&self.hnf_b, x);
        *self
            .sigma_index
            .get(&rep)
            .expect("sigma covers every coset")
    }

    /// Digit-expansion coset representatives for Z^d / B^k Z^d, in
    /// lexicographic-in-digits order (first digit fastest); Sigma_0 = {0}.
    pub fn coset_representatives(&self, k: u32) -> Vec<IntVec> {
        let count = self
            .coset_count(k)
            .expect("N^k overflows; guard with coset_count first");
        let mut powers = Vec::with_capacity(k as usize);
        let mut cur = IntMat::identity(self.dim);
        for _ in 0..k {
            powers.push(cur.clone());
            cur = cur.mul(&self.b);
        }
        let mut out = Vec::with_capacity(count as usize);
        for t in 0..count {
            let mut rem = t;
            let mut v = vec_zero(self.dim);
            for p in powers.iter() {
                let digit = (rem % self.n) as usize;
                rem /= self.n;
                let term = p.mul_vec(&self.sigma[digit]);
                v = crate::linalg::vec_add(&v, &term);
            }
            out.push(v);
        }
        out
    }

    /// N^k if it fits in u64.
    pub fn coset_count(&self, k: u32) -> Option<u64> {
        let mut acc: u64 = 1;
        for _ in 0..k {
            acc = acc.checked_mul(self.n)?;
        }
        Some(acc)
    }

    /// Canonical decomposition m = c + B^k t with c in Sigma_k; (c, t) unique.
    pub fn canonical_rep(&self, m: &[BigInt], k: u32) -> (IntVec, IntVec) {
        let mut x = m.to_vec();
        let mut c = vec_zero(self.dim);
        let mut pow = IntMat::identity(self.dim);
        for _ in 0..k {
            let digit = self.sigma_digit(&x);
            let s = &self.sigma[digit];
            c = crate::linalg::vec_add(&c, &pow.mul_vec(s));
            x = self
                .b_inverse(&vec_sub(&x, s))
                .expect("x - sigma digit lies in B Z^d");
            pow = pow.mul(&self.b);
        }
        (c, x)
    }

    /// The stable lattice, the intersection of the decreasing chain B^j Z^d
    /// over all j. Computed as the integer kernel of chi_u(B), where chi_u is
    /// the product (with multiplicity) of the irreducible factors of the
    /// characteristic polynomial of B whose constant term is a unit; naive
    /// iteration of the chain never stabilizes when a non-unit part is
    /// present.
    pub fn stable_lattice(&self) -> &Lattice {
        &self.stable
    }

    pub fn in_stable_lattice(&self, v: &[BigInt]) -> bool {
        vec_is_zero(&self.unit_poly_at_b.mul_vec(v))
    }

    /// Coordinates of a stable-lattice vector in the stored stable basis.
    pub fn stable_coordinates(&self, v: &[BigInt]) -> Option<IntVec> {
        self.stable.coordinates(v)
    }

    /// Apply B^{-1} in stable-lattice coordinates (always defined there).
    pub fn stable_inverse_step(&self, coords: &[BigInt]) -> IntVec {
        self.stable_inv_action
            .as_ref()
            .expect("stable lattice is nonzero")
            .mul_vec(coords)
    }

    /// Largest j with delta in B^j Z^d, or Infinite when delta lies in the
    /// stable lattice (membership along the chain is a down-set in j).
    pub fn max_membership_index(&self, delta: &[BigInt]) -> MembershipIndex {
        if self.in_stable_lattice(delta) {
            return MembershipIndex::Infinite;
        }
        let mut j = 0u32;
        let mut x = delta.to_vec();
        while let Some(y) = self.b_inverse(&x) {
            x = y;
            j += 1;
        }
        MembershipIndex::Finite(j)
    }
}

/// Reduce x into the HNF box: returns (r, t) with x = r + H t and
/// 0 <= r_i < H_ii. H must be square lower triangular with positive diagonal
/// (the HNF of a nonsingular matrix).
fn box_reduce(h: &IntMat, x: &[BigInt]) -> (IntVec, IntVec) {
    let d = h.rows();
    debug_assert_eq!(h.cols(), d);
    let mut r = x.to_vec();
    let mut t = Vec::with_capacity(d);
    for i in 0..d {
        let q = r[i].div_floor(h.get(i, i));
        if !q.is_zero() {
            for row in i..d {
                let v = &r[row] - &q * h.get(row, i);
                r[row] = v;
            }
        }
        t.push(q);
    }
    (r, t)
}

/// The box representatives {x : 0 <= x_i < h_ii}, zero vector first
/// (odometer order, last coordinate fastest).
fn default_sigma(hnf_b: &IntMat) -> Vec<IntVec> {
    let d = hnf_b.rows();
    let caps: Vec<BigInt> = (0..d).map(|i| hnf_b.get(i, i).clone()).collect();
    let mut out = Vec::new();
    let mut cur = vec_zero(d);
    loop {
        out.push(cur.clone());
        let mut i = d;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cur[i] += BigInt::one();
            if cur[i] < caps[i] {
                break;
            }
            cur[i] = BigInt::zero();
        }
    }
}

fn eval_poly_at_matrix(p: &[BigInt], m: &IntMat) -> IntMat {
    let d = m.rows();
    let mut acc = IntMat::zero(d, d);
    let mut pow = IntMat::identity(d);
    for (i, c) in p.iter().enumerate() {
        if !c.is_zero() {
            acc = acc.add(&pow.scale(c));
        }
        if i + 1 < p.len() {
            pow = pow.mul(m);
        }
    }
    acc
}

/// Exact inverse of an integer matrix with determinant +-1.
fn inverse_unimodular(c: &IntMat) -> IntMat {
    let r = c.rows();
    let mut inv = IntMat::zero(r, r);
    for j in 0..r {
        let mut e = vec_zero(r);
        e[j] = BigInt::one();
        let col = solve_rational(c, &e).expect("unimodular matrix is invertible");
        for i in 0..r {
            assert!(col[i].denom().is_one(), "inverse must be integral");
            inv.set(i, j, col[i].numer().clone());
        }
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vec_from_i64;

    fn sys(rows: &[Vec<i64>]) -> DilationSystem {
        DilationSystem::from_rows_i64(rows).unwrap()
    }

    #[test]
    fn membership_one_dimensional() {
        let s = sys(&[vec![2]]);
        assert!(s.in_sublattice(&vec_from_i64(&[4]), 2));
        assert!(!s.in_sublattice(&vec_from_i64(&[2]), 2));
        assert_eq!(s.preimage(&vec_from_i64(&[8]), 3), Some(vec_from_i64(&[1])));
        assert_eq!(s.preimage(&vec_from_i64(&[3]), 1), None);
    }

    #[test]
    fn membership_in_stable_direction() {
        // B = diag(2,1): (0,7) is in B^k Z^2 for every k
        let s = sys(&[vec![2, 0], vec![0, 1]]);
        assert!(s.in_sublattice(&vec_from_i64(&[0, 7]), 5));
        assert_eq!(
            s.max_membership_index(&vec_from_i64(&[0, 5])),
            MembershipIndex::Infinite
        );
    }

    #[test]
    fn preimage_upper_triangular() {
        // B = [[1,1],[0,1]]: B^{-1}(5,1) = (4,1)
        let a = IntMat::from_rows_i64(&[vec![1, 0], vec![1, 1]]);
        let s = DilationSystem::new(a).unwrap();
        assert_eq!(
            s.preimage(&vec_from_i64(&[5, 1]), 1),
            Some(vec_from_i64(&[4, 1]))
        );
    }

    #[test]
    fn coset_representatives_digit_order() {
        let s = sys(&[vec![2]]);
        assert_eq!(s.coset_representatives(0), vec![vec_from_i64(&[0])]);
        let reps = s.coset_representatives(2);
        assert_eq!(
            reps,
            vec![
                vec_from_i64(&[0]),
                vec_from_i64(&[1]),
                vec_from_i64(&[2]),
                vec_from_i64(&[3]),
            ]
        );
    }

    #[test]
    fn coset_representatives_pairwise_incongruent() {
        let s = sys(&[vec![2, 0], vec![0, 3]]);
        let reps = s.coset_representatives(1);
        assert_eq!(reps.len(), 6);
        for i in 0..reps.len() {
            for j in 0..i {
                let diff = vec_sub(&reps[i], &reps[j]);
                assert!(!s.in_sublattice(&diff, 1), "{:?} ~ {:?}", reps[i], reps[j]);
            }
        }
    }

    #[test]
    fn canonical_rep_examples() {
        let s = sys(&[vec![2]]);
        let (c, t) = s.canonical_rep(&vec_from_i64(&[7]), 2);
        assert_eq!(c, vec_from_i64(&[3]));
        assert_eq!(t, vec_from_i64(&[1]));

        let (c, t) = s.canonical_rep(&vec_from_i64(&[-1]), 1);
        assert_eq!(c, vec_from_i64(&[1]));
        assert_eq!(t, vec_from_i64(&[-1]));

        // members of Sigma_k are fixed
        for rep in s.coset_representatives(3) {
            let (c, t) = s.canonical_rep(&rep, 3);
            assert_eq!(c, rep);
            assert!(vec_is_zero(&t));
        }
    }

    #[test]
    fn canonical_rep_round_trip() {
        let s = sys(&[vec![1, 1], vec![-2, 1]]);
        for m1 in -4i64..=4 {
            for m2 in -4i64..=4 {
                for k in 0..=4u32 {
                    let m = vec_from_i64(&[m1, m2]);
                    let (c, t) = s.canonical_rep(&m, k);
                    let back =
                        crate::linalg::vec_add(&c, &s.b.pow(k).mul_vec(&t));
                    assert_eq!(back, m);
                }
            }
        }
    }

    #[test]
    fn stable_lattices() {
        assert!(sys(&[vec![2]]).stable_lattice().is_zero());
        assert_eq!(
            sys(&[vec![2, 0], vec![0, 1]]).stable_lattice().basis(),
            &IntMat::from_rows_i64(&[vec![0], vec![1]])
        );
        // B = [[1,1],[0,1]] (unimodular): stable lattice is all of Z^2
        let a = IntMat::from_rows_i64(&[vec![1, 0], vec![1, 1]]);
        assert!(DilationSystem::new(a).unwrap().stable_lattice().is_full());
    }

    #[test]
    fn stable_lattice_is_b_invariant() {
        for rows in [
            vec![vec![2, 0], vec![0, 1]],
            vec![vec![1, 0], vec![1, 1]],
            vec![vec![2]],
            vec![vec![3, 1], vec![0, 1]],
        ] {
            let s = sys(&rows);
            let m = s.stable_lattice();
            assert_eq!(&m.map(&s.b), m);
        }
    }

    #[test]
    fn dilation_flags() {
        assert!(sys(&[vec![2]]).is_dilation());
        assert!(!sys(&[vec![1, 1], vec![0, 1]]).is_dilation());
        assert!(sys(&[vec![0, -2], vec![1, 0]]).is_dilation());
        assert!(!sys(&[vec![2, 0], vec![0, 1]]).is_dilation());
    }

    #[test]
    fn dilation_implies_trivial_stable_lattice() {
        for rows in [
            vec![vec![2]],
            vec![vec![0, -2], vec![1, 0]],
            vec![vec![2, 1], vec![0, 3]],
            vec![vec![-2, 1], vec![1, -3]],
            vec![vec![3, 0], vec![1, 2]],
        ] {
            let s = sys(&rows);
            assert!(s.is_dilation(), "{rows:?}");
            assert!(s.stable_lattice().is_zero(), "{rows:?}");
        }
    }

    #[test]
    fn unimodular_implies_full_stable_lattice() {
        for rows in [
            vec![vec![1, 0], vec![1, 1]],
            vec![vec![0, -1], vec![1, 0]],
            vec![vec![2, 1], vec![1, 1]],
        ] {
            let s = sys(&rows);
            assert_eq!(s.det_abs(), 1);
            assert!(s.stable_lattice().is_full(), "{rows:?}");
        }
    }

    #[test]
    fn membership_chain_is_monotone() {
        let s = sys(&[vec![2, 1], vec![0, 3]]);
        for m1 in -6i64..=6 {
            for m2 in -6i64..=6 {
                let m = vec_from_i64(&[m1, m2]);
                for k in 0..5u32 {
                    if s.in_sublattice(&m, k + 1) {
                        assert!(s.in_sublattice(&m, k));
                    }
                }
            }
        }
    }

    #[test]
    fn max_membership_examples() {
        let s = sys(&[vec![2]]);
        assert_eq!(
            s.max_membership_index(&vec_from_i64(&[12])),
            MembershipIndex::Finite(2)
        );
        assert_eq!(
            s.max_membership_index(&vec_from_i64(&[0])),
            MembershipIndex::Infinite
        );
    }

    #[test]
    fn sigma_override_validation() {
        let a = IntMat::from_rows_i64(&[vec![2]]);
        let ok = DilationSystem::with_sigma(
            a.clone(),
            Some(vec![vec_from_i64(&[0]), vec_from_i64(&[3])]),
        );
        assert!(ok.is_ok());
        let missing_zero = DilationSystem::with_sigma(
            a.clone(),
            Some(vec![vec_from_i64(&[1]), vec_from_i64(&[2])]),
        );
        assert_eq!(missing_zero.unwrap_err(), SystemError::SigmaMissingZero);
        let congruent = DilationSystem::with_sigma(
            a,
            Some(vec![vec_from_i64(&[0]), vec_from_i64(&[2])]),
        );
        assert!(matches!(
            congruent.unwrap_err(),
            SystemError::SigmaCongruentPair(0, 1)
        ));
    }

    #[test]
    fn stable_inverse_action_round_trip() {
        let s = sys(&[vec![2, 0], vec![0, 1]]);
        // stable basis is (0,1); B acts as identity there
        let coords = s.stable_coordinates(&vec_from_i64(&[0, 5])).unwrap();
        assert_eq!(coords, vec_from_i64(&[5]));
        assert_eq!(s.stable_inverse_step(&coords), vec_from_i64(&[5]));
    }
}
