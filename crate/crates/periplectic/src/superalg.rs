//! The periplectic Lie superalgebra p(n) realized by 2n x 2n block matrices.
//!
//! An element is [[a, b], [c, -aᵗ]] with b symmetric and c skew. The even
//! part (b = c = 0) is a copy of gl(n); the two odd pieces are the symmetric
//! block (degree +1) and the skew block (degree -1), and each one squares to
//! zero under the superbracket. The basis used everywhere downstream:
//!
//!   E(i,j)          a = E_ij                      weight ε_i - ε_j
//!   B(i,i)          b = E_ii                      weight 2ε_i
//!   B(i,j), i < j   b = -(E_ij + E_ji)            weight ε_i + ε_j
//!   C(i,j), i < j   c = E_ij - E_ji               weight -ε_i - ε_j
//!
//! The minus sign on the off-diagonal symmetric generators is deliberate:
//! it makes [B(i,j), C(i,j)] = E(i,i) - E(j,j) on the nose, which keeps the
//! highest-weight eigenvalue computations downstream free of stray signs.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::scalar::Scalar;
use crate::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// Sign rule for swapping two homogeneous factors: only odd past odd
    /// picks up a minus.
    pub fn swap_is_negative(self, other: Parity) -> bool {
        self == Parity::Odd && other == Parity::Odd
    }
}

/// Basis element of p(n). Indices are 0-based; `B` requires i ≤ j and `C`
/// requires i < j (construct through `b` and `c` to stay canonical).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum BasisElem {
    E(u8, u8),
    B(u8, u8),
    C(u8, u8),
}

impl BasisElem {
    pub fn e(i: usize, j: usize) -> Self {
        BasisElem::E(i as u8, j as u8)
    }

    /// Symmetric-side odd generator; indices may come in either order.
    pub fn b(i: usize, j: usize) -> Self {
        let (i, j) = (i.min(j), i.max(j));
        BasisElem::B(i as u8, j as u8)
    }

    /// Skew-side odd generator; requires two distinct indices.
    pub fn c(i: usize, j: usize) -> Self {
        assert!(i != j, "skew generators need distinct indices");
        BasisElem::C(i.min(j) as u8, i.max(j) as u8)
    }

    pub fn parity(self) -> Parity {
        match self {
            BasisElem::E(..) => Parity::Even,
            _ => Parity::Odd,
        }
    }

    /// Position in the short grading: -1, 0 or +1.
    pub fn grade(self) -> i8 {
        match self {
            BasisElem::E(..) => 0,
            BasisElem::B(..) => 1,
            BasisElem::C(..) => -1,
        }
    }

    /// Weight in ε coordinates under the diagonal Cartan subalgebra.
    pub fn weight(self, n: usize) -> Vec<i64> {
        let mut w = vec![0i64; n];
        match self {
            BasisElem::E(i, j) => {
                w[i as usize] += 1;
                w[j as usize] -= 1;
            }
            BasisElem::B(i, j) => {
                w[i as usize] += 1;
                w[j as usize] += 1;
            }
            BasisElem::C(i, j) => {
                w[i as usize] -= 1;
                w[j as usize] -= 1;
            }
        }
        w
    }
}

impl fmt::Display for BasisElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (tag, i, j) = match *self {
            BasisElem::E(i, j) => ('E', i, j),
            BasisElem::B(i, j) => ('B', i, j),
            BasisElem::C(i, j) => ('C', i, j),
        };
        if i < 9 && j < 9 {
            write!(f, "{}{}{}", tag, i + 1, j + 1)
        } else {
            write!(f, "{}({},{})", tag, i + 1, j + 1)
        }
    }
}

/// A 2n x 2n matrix over Q, indexed by blocks: entry (i, j) of the four
/// blocks a, b, c, d sits at (i, j), (i, n+j), (n+i, j), (n+i, n+j).
#[derive(Clone, PartialEq, Eq)]
pub struct GMatrix {
    n: usize,
    entries: Vec<Scalar>,
}

impl GMatrix {
    pub fn zero(n: usize) -> Self {
        GMatrix {
            n,
            entries: vec![Scalar::zero(); 4 * n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * 2 * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.entries[r * 2 * self.n + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &GMatrix) -> GMatrix {
        assert_eq!(self.n, other.n);
        GMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }

    pub fn sub(&self, other: &GMatrix) -> GMatrix {
        assert_eq!(self.n, other.n);
        GMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(x, y)| x - y)
                .collect(),
        }
    }

    pub fn scale(&self, k: &Scalar) -> GMatrix {
        GMatrix {
            n: self.n,
            entries: self.entries.iter().map(|x| x * k).collect(),
        }
    }

    pub fn matmul(&self, other: &GMatrix) -> GMatrix {
        assert_eq!(self.n, other.n);
        let m = 2 * self.n;
        let mut out = GMatrix::zero(self.n);
        for i in 0..m {
            for k in 0..m {
                let lik = self.get(i, k);
                if lik.is_zero() {
                    continue;
                }
                for j in 0..m {
                    let v = out.get(i, j) + &(lik * other.get(k, j));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// xy - (-1)^{|x||y|} yx for homogeneous x, y of the given parities.
    pub fn super_commutator(&self, px: Parity, other: &GMatrix, py: Parity) -> GMatrix {
        let xy = self.matmul(other);
        let yx = other.matmul(self);
        if px.swap_is_negative(py) {
            xy.add(&yx)
        } else {
            xy.sub(&yx)
        }
    }

    /// Membership test for p(n): lower-right = -aᵗ, b symmetric, c skew.
    pub fn in_p(&self) -> bool {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                if *self.get(n + i, n + j) != -self.get(j, i) {
                    return false;
                }
                if *self.get(i, n + j) != *self.get(j, n + i) {
                    return false;
                }
                if *self.get(n + i, j) != -self.get(n + j, i) {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Debug for GMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = 2 * self.n;
        writeln!(f, "GMatrix {}x{} [", m, m)?;
        for i in 0..m {
            let row: Vec<String> = (0..m).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Linear combination of basis elements with rational coefficients.
pub type LinComb = BTreeMap<BasisElem, Scalar>;

pub fn lincomb_insert(acc: &mut LinComb, x: BasisElem, c: Scalar) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match acc.entry(x) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let sum = o.get() + &c;
            if sum.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
}

/// The algebra at a fixed rank, with its full bracket table precomputed
/// straight from the matrix realization.
pub struct Algebra {
    n: usize,
    basis: Vec<BasisElem>,
    table: HashMap<(BasisElem, BasisElem), LinComb>,
}

impl Algebra {
    pub fn new(n: usize) -> Result<Self, Error> {
        if n < 2 {
            return Err(Error::RankTooSmall(n));
        }
        let mut basis = Vec::new();
        for i in 0..n {
            for j in 0..n {
                basis.push(BasisElem::e(i, j));
            }
        }
        for i in 0..n {
            for j in i..n {
                basis.push(BasisElem::b(i, j));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                basis.push(BasisElem::c(i, j));
            }
        }
        let mut alg = Algebra {
            n,
            basis,
            table: HashMap::new(),
        };
        let elems = alg.basis.clone();
        for &x in &elems {
            for &y in &elems {
                let m = alg
                    .matrix(x)
                    .super_commutator(x.parity(), &alg.matrix(y), y.parity());
                let comb = alg.decompose(&m);
                alg.table.insert((x, y), comb);
            }
        }
        Ok(alg)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElem] {
        &self.basis
    }

    pub fn matrix(&self, x: BasisElem) -> GMatrix {
        let n = self.n;
        let mut m = GMatrix::zero(n);
        match x {
            BasisElem::E(i, j) => {
                let (i, j) = (i as usize, j as usize);
                m.set(i, j, Scalar::one());
                m.set(n + j, n + i, -Scalar::one());
            }
            BasisElem::B(i, j) => {
                let (i, j) = (i as usize, j as usize);
                if i == j {
                    m.set(i, n + i, Scalar::one());
                } else {
                    m.set(i, n + j, -Scalar::one());
                    m.set(j, n + i, -Scalar::one());
                }
            }
            BasisElem::C(i, j) => {
                let (i, j) = (i as usize, j as usize);
                m.set(n + i, j, Scalar::one());
                m.set(n + j, i, -Scalar::one());
            }
        }
        m
    }

    /// Reads a matrix known to lie in p(n) back off as basis coordinates.
    /// Panics when the matrix is not actually in the algebra; every bracket
    /// result goes through this check.
    pub fn decompose(&self, m: &GMatrix) -> LinComb {
        assert!(m.in_p(), "matrix escaped the algebra");
        let n = self.n;
        let mut comb = LinComb::new();
        for i in 0..n {
            for j in 0..n {
                lincomb_insert(&mut comb, BasisElem::e(i, j), m.get(i, j).clone());
            }
        }
        for i in 0..n {
            lincomb_insert(&mut comb, BasisElem::b(i, i), m.get(i, n + i).clone());
            for j in i + 1..n {
                // B(i,j) carries -1 at the (i, n+j) slot.
                lincomb_insert(&mut comb, BasisElem::b(i, j), -m.get(i, n + j));
                lincomb_insert(&mut comb, BasisElem::c(i, j), m.get(n + i, j).clone());
            }
        }
        comb
    }

    pub fn from_comb(&self, comb: &LinComb) -> GMatrix {
        let mut m = GMatrix::zero(self.n);
        for (&x, c) in comb {
            m = m.add(&self.matrix(x).scale(c));
        }
        m
    }

    pub fn bracket(&self, x: BasisElem, y: BasisElem) -> &LinComb {
        self.table
            .get(&(x, y))
            .expect("basis elements of another rank")
    }

    /// Bilinear extension of the bracket to combinations.
    pub fn bracket_comb(&self, xs: &LinComb, ys: &LinComb) -> LinComb {
        let mut out = LinComb::new();
        for (&x, cx) in xs {
            for (&y, cy) in ys {
                let k = cx * cy;
                for (&z, cz) in self.bracket(x, y) {
                    lincomb_insert(&mut out, z, &k * cz);
                }
            }
        }
        out
    }

    /// Basis vector spanning the root space of the given ε-coordinate root,
    /// or `None` when the vector is not a root of p(n).
    pub fn root_vector(&self, root: &[i64]) -> Option<BasisElem> {
        assert_eq!(root.len(), self.n, "root of another rank");
        let pos: Vec<usize> = (0..self.n).filter(|&i| root[i] > 0).collect();
        let neg: Vec<usize> = (0..self.n).filter(|&i| root[i] < 0).collect();
        match (
            root.iter().filter(|&&v| v != 0).map(|v| v.abs()).sum::<i64>(),
            pos.as_slice(),
            neg.as_slice(),
        ) {
            (2, [i, j], []) if i != j => Some(BasisElem::b(*i, *j)),
            (2, [i], []) if root[*i] == 2 => Some(BasisElem::b(*i, *i)),
            (2, [], [i, j]) if i != j => Some(BasisElem::c(*i, *j)),
            (2, [i], [j]) if root[*i] == 1 && root[*j] == -1 => Some(BasisElem::e(*i, *j)),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(n: usize) -> Algebra {
        Algebra::new(n).unwrap()
    }

    fn single(x: BasisElem) -> LinComb {
        let mut c = LinComb::new();
        c.insert(x, Scalar::one());
        c
    }

    #[test]
    fn rank_below_two_is_rejected() {
        assert!(matches!(Algebra::new(1), Err(Error::RankTooSmall(1))));
        assert!(matches!(Algebra::new(0), Err(Error::RankTooSmall(0))));
    }

    #[test]
    fn dimension_counts() {
        assert_eq!(alg(2).dim(), 8);
        assert_eq!(alg(3).dim(), 18);
        assert_eq!(alg(4).dim(), 32);
    }

    #[test]
    fn basis_matrices_satisfy_the_block_constraints() {
        let a = alg(3);
        for &x in a.basis() {
            assert!(a.matrix(x).in_p(), "{x} realized outside the algebra");
        }
    }

    #[test]
    fn decompose_inverts_the_matrix_realization() {
        let a = alg(3);
        for &x in a.basis() {
            let comb = a.decompose(&a.matrix(x));
            assert_eq!(comb, single(x), "roundtrip failed for {x}");
        }
    }

    #[test]
    fn even_part_is_gl() {
        let a = alg(3);
        // [E_ij, E_kl] = δ_jk E_il - δ_li E_kj
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        let got = a.bracket(BasisElem::e(i, j), BasisElem::e(k, l)).clone();
                        let mut want = LinComb::new();
                        if j == k {
                            lincomb_insert(&mut want, BasisElem::e(i, l), Scalar::one());
                        }
                        if l == i {
                            lincomb_insert(&mut want, BasisElem::e(k, j), -Scalar::one());
                        }
                        assert_eq!(got, want);
                    }
                }
            }
        }
    }

    #[test]
    fn opposite_odd_roots_bracket_to_the_coroot() {
        let a = alg(3);
        for i in 0..3 {
            for j in i + 1..3 {
                let got = a.bracket(BasisElem::b(i, j), BasisElem::c(i, j)).clone();
                let mut want = LinComb::new();
                want.insert(BasisElem::e(i, i), Scalar::one());
                want.insert(BasisElem::e(j, j), -Scalar::one());
                assert_eq!(got, want, "pair ({i},{j})");
            }
        }
    }

    #[test]
    fn doubled_root_meets_skew_generator_in_the_even_part() {
        let a = alg(2);
        let got = a.bracket(BasisElem::b(0, 0), BasisElem::c(0, 1)).clone();
        assert_eq!(got, single(BasisElem::e(0, 1)));
    }

    #[test]
    fn each_odd_side_is_super_abelian() {
        let a = alg(3);
        for &x in a.basis() {
            for &y in a.basis() {
                if x.grade() == y.grade() && x.parity() == Parity::Odd {
                    assert!(a.bracket(x, y).is_empty(), "[{x},{y}] nonzero");
                }
            }
        }
    }

    #[test]
    fn bracket_respects_the_short_grading() {
        let a = alg(3);
        for &x in a.basis() {
            for &y in a.basis() {
                let g = x.grade() + y.grade();
                for z in a.bracket(x, y).keys() {
                    assert!(g.abs() <= 1, "grade {g} should have been killed");
                    assert_eq!(z.grade(), g);
                }
            }
        }
    }

    #[test]
    fn bracket_adds_weights() {
        let a = alg(3);
        for &x in a.basis() {
            for &y in a.basis() {
                let sum: Vec<i64> = x
                    .weight(3)
                    .iter()
                    .zip(y.weight(3))
                    .map(|(p, q)| p + q)
                    .collect();
                for z in a.bracket(x, y).keys() {
                    assert_eq!(z.weight(3), sum, "[{x},{y}] hit {z}");
                }
            }
        }
    }

    #[test]
    fn cartan_action_reads_off_the_weight() {
        let a = alg(3);
        for &x in a.basis() {
            let w = x.weight(3);
            for k in 0..3 {
                let got = a.bracket(BasisElem::e(k, k), x).clone();
                let mut want = LinComb::new();
                lincomb_insert(&mut want, x, Scalar::from_int(w[k]));
                assert_eq!(got, want, "h_{k} on {x}");
            }
        }
    }

    #[test]
    fn super_jacobi_holds_exhaustively() {
        // Derivation form: [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]].
        for n in 2..=3 {
            let a = alg(n);
            for &x in a.basis() {
                for &y in a.basis() {
                    for &z in a.basis() {
                        let lhs = a.bracket_comb(&single(x), a.bracket(y, z));
                        let mut rhs = a.bracket_comb(a.bracket(x, y), &single(z));
                        let mut second = a.bracket_comb(&single(y), a.bracket(x, z));
                        if x.parity().swap_is_negative(y.parity()) {
                            second = second
                                .into_iter()
                                .map(|(k, v)| (k, -v))
                                .collect();
                        }
                        for (k, v) in second {
                            lincomb_insert(&mut rhs, k, v);
                        }
                        assert_eq!(lhs, rhs, "jacobi failed at [{x},[{y},{z}]]");
                    }
                }
            }
        }
    }

    #[test]
    fn root_vectors_match_declared_weights() {
        let a = alg(3);
        for &x in a.basis() {
            let w = x.weight(3);
            if w.iter().all(|&v| v == 0) {
                assert!(a.root_vector(&w).is_none());
            } else {
                assert_eq!(a.root_vector(&w), Some(x));
            }
        }
        assert!(a.root_vector(&[3, -1, 0]).is_none());
    }

    #[test]
    fn rendering_is_one_based() {
        assert_eq!(BasisElem::e(0, 1).to_string(), "E12");
        assert_eq!(BasisElem::b(1, 1).to_string(), "B22");
        assert_eq!(BasisElem::c(0, 2).to_string(), "C13");
    }
}
