//! Highest-weight modules induced from a character of the even Borel plus
//! the symmetric odd piece.
//!
//! The module has a basis of lowering monomials (skew-odd generators and
//! strictly lower-triangular gl generators) applied to the highest vector.
//! Acting with an arbitrary enveloping-algebra element reduces to
//! straightening in the triangular order and then reading each normal
//! monomial right to left: raising factors kill the highest vector,
//! diagonal factors turn into coordinates of the weight, and what remains
//! is again a basis monomial.
//!
//! Weight coordinates are polynomials in a parameter universe, so one
//! computation covers a fully symbolic weight, a numeric one, or a family
//! with constrained coordinates (say, the last two equal).

use std::collections::BTreeMap;
use std::rc::Rc;

use crate::poly::WeightPoly;
use crate::scalar::Scalar;
use crate::superalg::{Algebra, BasisElem};
use crate::uea::{triangular_class, Elem, PbwMono, PbwOrder, Uea};
use crate::Error;

/// Module vector: combination of lowering monomials with polynomial
/// coefficients in the weight parameters.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VermaVector {
    params: usize,
    terms: BTreeMap<PbwMono, WeightPoly>,
}

impl VermaVector {
    pub fn zero(params: usize) -> Self {
        VermaVector {
            params,
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMono, &WeightPoly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of the highest vector itself.
    pub fn highest_coefficient(&self) -> WeightPoly {
        self.terms
            .get(&PbwMono::one())
            .cloned()
            .unwrap_or_else(|| WeightPoly::zero(self.params))
    }

    pub fn coefficient(&self, m: &PbwMono) -> WeightPoly {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| WeightPoly::zero(self.params))
    }

    fn insert(&mut self, m: PbwMono, c: WeightPoly) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().add(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &VermaVector) -> VermaVector {
        assert_eq!(self.params, other.params, "different parameter universes");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, k: &WeightPoly) -> VermaVector {
        let mut out = VermaVector::zero(self.params);
        for (m, c) in &self.terms {
            out.insert(m.clone(), c.mul(k));
        }
        out
    }

    pub fn neg(&self) -> VermaVector {
        let mut out = VermaVector::zero(self.params);
        for (m, c) in &self.terms {
            out.insert(m.clone(), c.neg());
        }
        out
    }

    /// True when the vector lies in the line spanned by `other`.
    /// `other` must be a single monomial.
    pub fn is_multiple_of_monomial(&self, other: &VermaVector) -> bool {
        assert_eq!(other.terms.len(), 1, "span test against one monomial");
        let target = other.terms.keys().next().unwrap();
        self.terms.keys().all(|m| m == target)
    }
}

/// The module at a fixed highest weight, bundling the triangular
/// straightening engine it acts through.
pub struct VermaModule {
    uea: Uea,
    mu: Vec<WeightPoly>,
    params: usize,
}

impl VermaModule {
    /// General constructor: one polynomial per ε coordinate, all drawn from
    /// the same parameter universe.
    pub fn new(alg: Rc<Algebra>, mu: Vec<WeightPoly>) -> Result<Self, Error> {
        let n = alg.n();
        if mu.len() != n {
            return Err(Error::Arity {
                expected: n,
                got: mu.len(),
            });
        }
        let params = mu[0].nvars();
        if mu.iter().any(|p| p.nvars() != params) {
            return Err(Error::UniverseMismatch);
        }
        Ok(VermaModule {
            uea: Uea::new(alg, PbwOrder::ByTriangular),
            mu,
            params,
        })
    }

    /// Fully symbolic weight: coordinate i is its own parameter.
    pub fn symbolic(alg: Rc<Algebra>) -> Self {
        let n = alg.n();
        let mu = (0..n).map(|i| WeightPoly::var(n, i)).collect();
        VermaModule::new(alg, mu).unwrap()
    }

    /// Numeric weight: no parameters at all.
    pub fn numeric(alg: Rc<Algebra>, mu: &[Scalar]) -> Result<Self, Error> {
        let coords = mu
            .iter()
            .map(|c| WeightPoly::constant(0, c.clone()))
            .collect();
        VermaModule::new(alg, coords)
    }

    /// Symbolic weight with the last two coordinates forced equal:
    /// (x_1, ..., x_{n-2}, t, t) in an (n-1)-parameter universe.
    pub fn symbolic_tail_equal(alg: Rc<Algebra>) -> Self {
        let n = alg.n();
        let mut mu: Vec<WeightPoly> = (0..n - 1).map(|i| WeightPoly::var(n - 1, i)).collect();
        mu.push(WeightPoly::var(n - 1, n - 2));
        VermaModule::new(alg, mu).unwrap()
    }

    pub fn algebra(&self) -> &Algebra {
        self.uea.algebra()
    }

    pub fn engine(&self) -> &Uea {
        &self.uea
    }

    pub fn mu(&self) -> &[WeightPoly] {
        &self.mu
    }

    pub fn params(&self) -> usize {
        self.params
    }

    pub fn highest(&self) -> VermaVector {
        let mut v = VermaVector::zero(self.params);
        v.insert(PbwMono::one(), WeightPoly::one(self.params));
        v
    }

    /// Applies a straightened monomial to a basis vector of the module.
    fn apply_mono(&self, m: &PbwMono, base: &PbwMono, scale: &WeightPoly, out: &mut VermaVector) {
        // The product m·base is straightened first; each normal monomial
        // then splits as lowering · diagonal · raising.
        let mut base_elem = Elem::zero();
        base_elem.insert(base.clone(), Scalar::one());
        let mut m_elem = Elem::zero();
        m_elem.insert(m.clone(), Scalar::one());
        let product = self.uea.mul(&m_elem, &base_elem);
        'terms: for (mono, c) in product.terms() {
            let mut lowering: Vec<(BasisElem, u16)> = Vec::new();
            let mut coeff = WeightPoly::constant(self.params, c.clone());
            for &(x, e) in &mono.0 {
                match triangular_class(x) {
                    1 => continue 'terms,
                    0 => {
                        let BasisElem::E(i, _) = x else { unreachable!() };
                        coeff = coeff.mul(&self.mu[i as usize].pow(e as u32));
                    }
                    _ => lowering.push((x, e)),
                }
            }
            out.insert(PbwMono(lowering), coeff.mul(scale));
        }
    }

    /// Action of an enveloping-algebra element. The element may come from
    /// an engine with a different order; its factor lists are re-straightened
    /// here, so the result is order-independent.
    pub fn act(&self, u: &Elem, v: &VermaVector) -> VermaVector {
        let u = self.uea.import(u);
        let mut out = VermaVector::zero(self.params);
        for (mu_mono, cu) in u.terms() {
            for (mv, cv) in &v.terms {
                let scale = cv.scale(cu);
                self.apply_mono(mu_mono, mv, &scale, &mut out);
            }
        }
        out
    }

    pub fn act_gen(&self, x: BasisElem, v: &VermaVector) -> VermaVector {
        self.act(&self.uea.gen(x), v)
    }

    /// Applies a word of generators, rightmost factor first.
    pub fn act_word(&self, word: &[BasisElem], v: &VermaVector) -> VermaVector {
        let mut acc = v.clone();
        for &x in word.iter().rev() {
            acc = self.act_gen(x, &acc);
        }
        acc
    }

    /// The raising generators: strictly upper gl and the symmetric odd side.
    pub fn raising_generators(&self) -> Vec<BasisElem> {
        self.algebra()
            .basis()
            .iter()
            .copied()
            .filter(|&x| triangular_class(x) == 1)
            .collect()
    }

    /// A nonzero vector every raising generator kills.
    pub fn is_singular(&self, v: &VermaVector) -> bool {
        !v.is_zero()
            && self
                .raising_generators()
                .iter()
                .all(|&x| self.act_gen(x, v).is_zero())
    }
}

/// All skew-odd generators in ascending lexicographic index order. Their
/// product is the canonical top lowering monomial.
pub fn lowering_odd_word(n: usize) -> Vec<BasisElem> {
    let mut w = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            w.push(BasisElem::c(i, j));
        }
    }
    w
}

/// The off-diagonal symmetric-odd generators in descending lexicographic
/// order, the partner word to `lowering_odd_word`.
pub fn raising_odd_word(n: usize) -> Vec<BasisElem> {
    let mut w = lowering_odd_word(n);
    w.reverse();
    w.iter()
        .map(|x| match x {
            BasisElem::C(i, j) => BasisElem::b(*i as usize, *j as usize),
            _ => unreachable!(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::{delta_poly, rho0};
    use crate::superalg::BasisElem as BE;

    fn alg(n: usize) -> Rc<Algebra> {
        Rc::new(Algebra::new(n).unwrap())
    }

    #[test]
    fn cartan_acts_on_the_highest_vector_by_the_weight() {
        let m = VermaModule::symbolic(alg(3));
        let v = m.highest();
        for i in 0..3 {
            let got = m.act_gen(BE::e(i, i), &v);
            assert_eq!(got, v.scale(&WeightPoly::var(3, i)));
        }
    }

    #[test]
    fn raising_generators_kill_the_highest_vector() {
        let m = VermaModule::symbolic(alg(3));
        let v = m.highest();
        for x in m.raising_generators() {
            assert!(m.act_gen(x, &v).is_zero(), "{x} should kill the top");
        }
        assert!(m.is_singular(&v));
    }

    #[test]
    fn lowering_then_raising_gives_the_eigenvalue_polynomial() {
        // The canonical raising word applied after the canonical lowering
        // word multiplies the highest vector by the i<j product of
        // (μ_i - μ_j + j - i - 1).
        for n in 2..=3 {
            let m = VermaModule::symbolic(alg(n));
            let down = m.act_word(&lowering_odd_word(n), &m.highest());
            assert_eq!(down.num_terms(), 1, "top lowering vector is one monomial");
            let back = m.act_word(&raising_odd_word(n), &down);
            let expected = m.highest().scale(&delta_poly(n));
            assert_eq!(back, expected, "n = {n}");
        }
    }

    #[test]
    fn symbolic_and_numeric_actions_agree_pointwise() {
        let n = 2;
        let sym = VermaModule::symbolic(alg(n));
        let down_up = sym.act_word(
            &[BE::b(0, 1), BE::c(0, 1)],
            &sym.highest(),
        );
        let sym_coeff = down_up.highest_coefficient();

        for mu in [[1i64, 0], [4, -2], [0, 0]] {
            let point: Vec<Scalar> = mu.iter().map(|&v| Scalar::from_int(v)).collect();
            let num = VermaModule::numeric(alg(n), &point).unwrap();
            let got = num.act_word(&[BE::b(0, 1), BE::c(0, 1)], &num.highest());
            assert_eq!(
                got.highest_coefficient().constant_term(),
                sym_coeff.eval(&point).unwrap()
            );
        }
    }

    #[test]
    fn lower_even_vector_is_singular_exactly_on_the_equal_tail_locus() {
        // With the last two weight coordinates forced equal, applying the
        // lowest simple gl lowering operator to the top produces a vector
        // every raising generator kills.
        for n in 2..=3 {
            let a = alg(n);
            let m = VermaModule::symbolic_tail_equal(a.clone());
            let u = m.act_gen(BE::e(n - 1, n - 2), &m.highest());
            assert!(m.is_singular(&u), "n = {n}");

            // Generic symbolic weight: the same vector is not singular.
            let generic = VermaModule::symbolic(a);
            let ug = generic.act_gen(BE::e(n - 1, n - 2), &generic.highest());
            assert!(!generic.is_singular(&ug), "n = {n} generic");
        }
    }

    #[test]
    fn skew_odd_vector_maps_into_the_singular_line() {
        // Still on the equal-tail locus: w = C(n-1,n)·top is not singular
        // itself, but every raising generator sends it into the line through
        // u = E(n,n-1)·top. The doubled-root generator hits -u exactly.
        for n in 2..=3 {
            let m = VermaModule::symbolic_tail_equal(alg(n));
            let w = m.act_gen(BE::c(n - 2, n - 1), &m.highest());
            let u = m.act_gen(BE::e(n - 1, n - 2), &m.highest());
            assert!(!m.is_singular(&w));
            for x in m.raising_generators() {
                let image = m.act_gen(x, &w);
                assert!(
                    image.is_zero() || image.is_multiple_of_monomial(&u),
                    "n = {n}: {x} sent w outside the singular line"
                );
            }
            let hit = m.act_gen(BE::b(n - 1, n - 1), &w);
            assert_eq!(hit, u.neg(), "n = {n}");
        }
    }

    #[test]
    fn rho_shift_data_is_consistent_with_the_eigenvalue() {
        // The eigenvalue polynomial vanishes at μ = -ρ shifted by any
        // pattern that collides two coordinates; spot check via rho0.
        let n = 3;
        let rho = rho0(n);
        let mu: Vec<Scalar> = rho.iter().map(|r| r - &rho[0]).collect();
        // μ = (0, -1, -2): factors (i,j) give -1+0, -2+1, -1+0: nonzero.
        assert!(!delta_poly(n).eval(&mu).unwrap().is_zero());
    }
}
