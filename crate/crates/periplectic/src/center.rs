//! Construction of the distinguished invariants T and S in the enveloping
//! algebra of p(n).
//!
//! Write Y for the product of all skew-odd generators and d for their
//! number. The pipeline:
//!
//! 1. On the degree-d part of the exterior algebra of the symmetric odd
//!    piece (squarefree products of d distinct B generators), the map
//!    φ(x) = even part of Y·x lands in U(gl(n)).
//! 2. φ can have a kernel. A complement is cut out with the top wedge
//!    pairing: x ∧ y read off against the product of all B generators.
//!    The complement must meet the kernel trivially; that is checked, not
//!    assumed.
//! 3. U(gl(n)) carries a symmetric bilinear form: identify each element
//!    with its symmetrized symbol (the change of basis is unitriangular in
//!    the degree filtration, so this is an exact recursion), make distinct
//!    degrees orthogonal, and pair degree-m symbols by the permanent of
//!    their pairwise trace-form values.
//! 4. With u_k = φ(x_k) on a basis of the complement and u'_k the dual
//!    family under that form, T = Σ x_k·u'_k. The element is independent
//!    of the basis choice; its monomials are already straightened because
//!    B factors sort before gl factors.
//! 5. S = ad_Y(T), applying ad of each skew-odd factor right to left.
//!
//! S has weight zero, so on a highest-weight module it acts on the top
//! vector by a polynomial in the weight: its diagonal symbol in the
//! triangular order. That polynomial is proportional to the all-pairs
//! product Θ, and the ratio κ is exposed here.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::rc::Rc;

use crate::linalg::Mat;
use crate::poly::WeightPoly;
use crate::roots::{permutations, theta_poly};
use crate::scalar::Scalar;
use crate::superalg::{Algebra, BasisElem};
use crate::uea::{Elem, PbwMono, PbwOrder, Uea};
use crate::verma::lowering_odd_word;
use crate::Error;

/// The dual system behind T: a basis of the complement of ker φ, its φ
/// images, and the dual family under the invariant form.
pub struct InvariantData {
    pub complement: Vec<Elem>,
    pub images: Vec<Elem>,
    pub duals: Vec<Elem>,
    pub t: Elem,
}

pub struct CenterBuilder {
    alg: Rc<Algebra>,
    engine: Uea,
    tri: Uea,
    data: RefCell<Option<Rc<InvariantData>>>,
    s_cache: RefCell<Option<Elem>>,
}

impl CenterBuilder {
    pub fn new(alg: Rc<Algebra>) -> Self {
        CenterBuilder {
            engine: Uea::new(alg.clone(), PbwOrder::ByGrade),
            tri: Uea::new(alg.clone(), PbwOrder::ByTriangular),
            alg,
            data: RefCell::new(None),
            s_cache: RefCell::new(None),
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn engine(&self) -> &Uea {
        &self.engine
    }

    /// Number of skew-odd generators, the wedge degree everything runs at.
    pub fn d(&self) -> usize {
        let n = self.alg.n();
        n * (n - 1) / 2
    }

    /// The symmetric-odd generators in ascending index order; bit k of a
    /// wedge mask refers to position k here.
    pub fn odd_sym_generators(&self) -> Vec<BasisElem> {
        let n = self.alg.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                out.push(BasisElem::b(i, j));
            }
        }
        out
    }

    /// Masks of the squarefree degree-d monomials, ascending.
    pub fn wedge_basis(&self) -> Vec<u64> {
        let gens = self.odd_sym_generators().len();
        let d = self.d() as u32;
        (0u64..1 << gens).filter(|m| m.count_ones() == d).collect()
    }

    fn mask_elem(&self, mask: u64) -> Elem {
        let gens = self.odd_sym_generators();
        let factors: Vec<(BasisElem, u16)> = (0..gens.len())
            .filter(|k| mask & (1 << k) != 0)
            .map(|k| (gens[k], 1))
            .collect();
        let mut e = Elem::zero();
        e.insert(PbwMono(factors), Scalar::one());
        e
    }

    /// Product of all skew-odd generators, ascending: the top lowering
    /// monomial.
    pub fn top_lowering(&self) -> Elem {
        self.engine.product_of(&lowering_odd_word(self.alg.n()))
    }

    /// φ(x) = even part of Y·x.
    pub fn phi(&self, x: &Elem) -> Elem {
        self.engine
            .even_part(&self.engine.mul(&self.top_lowering(), x))
    }

    /// Kernel of φ as coordinate vectors in the wedge basis.
    pub fn phi_kernel(&self) -> Vec<Vec<Scalar>> {
        let basis = self.wedge_basis();
        let images: Vec<Elem> = basis.iter().map(|&m| self.phi(&self.mask_elem(m))).collect();
        let mut cols: BTreeMap<PbwMono, usize> = BTreeMap::new();
        for im in &images {
            for (m, _) in im.terms() {
                let next = cols.len();
                cols.entry(m.clone()).or_insert(next);
            }
        }
        let mut a = Mat::zero(cols.len().max(1), basis.len());
        for (k, im) in images.iter().enumerate() {
            for (m, c) in im.terms() {
                a[(cols[m], k)] = c.clone();
            }
        }
        a.nullspace()
    }

    /// Basis of the wedge-pairing orthogonal of ker φ, checked to be a true
    /// complement.
    pub fn phi_complement(&self) -> Result<Vec<Vec<Scalar>>, Error> {
        let basis = self.wedge_basis();
        let dim = basis.len();
        let kernel = self.phi_kernel();
        if kernel.is_empty() {
            return Ok((0..dim)
                .map(|k| {
                    let mut v = vec![Scalar::zero(); dim];
                    v[k] = Scalar::one();
                    v
                })
                .collect());
        }
        let full: u64 = (1 << self.odd_sym_generators().len()) - 1;
        // Pairing matrix: ±1 on complementary masks, sign from sorting the
        // concatenation.
        let mut pairing = Mat::zero(dim, dim);
        for (s, &ms) in basis.iter().enumerate() {
            for (t, &mt) in basis.iter().enumerate() {
                if ms | mt == full {
                    if let Some(flip) = crate::grassmann::merge_sign(ms, mt) {
                        pairing[(s, t)] = if flip { -Scalar::one() } else { Scalar::one() };
                    }
                }
            }
        }
        let constraints = Mat::from_rows(kernel.clone()).matmul(&pairing);
        let complement = constraints.nullspace();
        // Transversality: complement and kernel together must span.
        let mut stacked = complement.clone();
        stacked.extend(kernel);
        if Mat::from_rows(stacked).rank() != dim {
            return Err(Error::DegenerateForm);
        }
        Ok(complement)
    }

    fn coords_to_elem(&self, coords: &[Scalar]) -> Elem {
        let basis = self.wedge_basis();
        let mut e = Elem::zero();
        for (k, c) in coords.iter().enumerate() {
            e = e.add(&self.mask_elem(basis[k]).scale(c));
        }
        e
    }

    /// Symmetrization of a monomial: the average over all arrangements of
    /// its factor word.
    fn symmetrize(&self, m: &PbwMono) -> Elem {
        let mut word = Vec::new();
        for &(x, e) in &m.0 {
            for _ in 0..e {
                word.push(x);
            }
        }
        let k = word.len();
        let mut acc = Elem::zero();
        for perm in permutations(k) {
            let arranged: Vec<BasisElem> = perm.iter().map(|&p| word[p]).collect();
            acc = acc.add(&self.engine.product_of(&arranged));
        }
        let count = Scalar::from_int(permutations(k).len() as i64);
        acc.scale(&count.recip())
    }

    /// Writes an element of U(gl(n)) in the symmetrized basis. The top
    /// degree passes through unchanged and the correction is strictly
    /// smaller, so the recursion terminates.
    pub fn symmetric_symbol(&self, u: &Elem) -> BTreeMap<PbwMono, Scalar> {
        let mut rest = u.clone();
        let mut out: BTreeMap<PbwMono, Scalar> = BTreeMap::new();
        while !rest.is_zero() {
            let top = rest
                .terms()
                .map(|(m, _)| m.degree())
                .max()
                .unwrap_or(0);
            let tops: Vec<(PbwMono, Scalar)> = rest
                .terms()
                .filter(|(m, _)| m.degree() == top)
                .map(|(m, c)| {
                    assert!(m.is_even_subalgebra(), "symbol outside U(gl)");
                    (m.clone(), c.clone())
                })
                .collect();
            for (m, c) in &tops {
                *out.entry(m.clone()).or_insert_with(Scalar::zero) += c.clone();
                rest = rest.sub(&self.symmetrize(m).scale(c));
            }
            let new_top = rest.terms().map(|(m, _)| m.degree()).max().unwrap_or(0);
            assert!(rest.is_zero() || new_top < top, "symbol recursion stuck");
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Trace form of two gl generators viewed as n x n matrices.
    fn trace_pair(x: BasisElem, y: BasisElem) -> Scalar {
        match (x, y) {
            (BasisElem::E(i, j), BasisElem::E(k, l)) if j == k && i == l => Scalar::one(),
            (BasisElem::E(..), BasisElem::E(..)) => Scalar::zero(),
            _ => panic!("trace form is only defined on the gl part"),
        }
    }

    /// Permanent of the pairwise trace values of two equal-length factor
    /// words.
    fn permanent_pairing(xs: &[BasisElem], ys: &[BasisElem]) -> Scalar {
        let k = xs.len();
        let mut acc = Scalar::zero();
        for perm in permutations(k) {
            let mut prod = Scalar::one();
            for (i, &p) in perm.iter().enumerate() {
                prod *= Self::trace_pair(xs[i], ys[p]);
                if prod.is_zero() {
                    break;
                }
            }
            acc += prod;
        }
        acc
    }

    /// The symmetric invariant form on U(gl(n)): distinct symbol degrees
    /// are orthogonal, equal degrees pair by the trace-form permanent.
    pub fn invariant_form(&self, u: &Elem, v: &Elem) -> Scalar {
        let su = self.symmetric_symbol(u);
        let sv = self.symmetric_symbol(v);
        let expand = |m: &PbwMono| {
            let mut w = Vec::new();
            for &(x, e) in &m.0 {
                for _ in 0..e {
                    w.push(x);
                }
            }
            w
        };
        let mut acc = Scalar::zero();
        for (mu, cu) in &su {
            let wu = expand(mu);
            for (mv, cv) in &sv {
                let wv = expand(mv);
                if wu.len() != wv.len() {
                    continue;
                }
                acc += &(cu * cv) * &Self::permanent_pairing(&wu, &wv);
            }
        }
        acc
    }

    /// Builds the dual system and T, cached.
    pub fn invariant_data(&self) -> Result<Rc<InvariantData>, Error> {
        if let Some(d) = self.data.borrow().as_ref() {
            return Ok(d.clone());
        }
        let complement: Vec<Elem> = self
            .phi_complement()?
            .iter()
            .map(|coords| self.coords_to_elem(coords))
            .collect();
        let images: Vec<Elem> = complement.iter().map(|x| self.phi(x)).collect();
        let k = images.len();
        let mut gram = Mat::zero(k, k);
        for a in 0..k {
            for b in a..k {
                let v = self.invariant_form(&images[a], &images[b]);
                gram[(a, b)] = v.clone();
                gram[(b, a)] = v;
            }
        }
        let ginv = gram.inverse().ok_or(Error::DegenerateForm)?;
        let duals: Vec<Elem> = (0..k)
            .map(|a| {
                let mut acc = Elem::zero();
                for (b, im) in images.iter().enumerate() {
                    acc = acc.add(&im.scale(&ginv[(a, b)]));
                }
                acc
            })
            .collect();
        let mut t = Elem::zero();
        for (x, u) in complement.iter().zip(&duals) {
            t = t.add(&self.engine.mul(x, u));
        }
        let data = Rc::new(InvariantData {
            complement,
            images,
            duals,
            t,
        });
        *self.data.borrow_mut() = Some(data.clone());
        Ok(data)
    }

    pub fn t(&self) -> Result<Elem, Error> {
        Ok(self.invariant_data()?.t.clone())
    }

    /// ad of the top lowering product: the factors act right to left.
    pub fn lowered_by_top(&self, u: &Elem) -> Elem {
        let mut acc = u.clone();
        for &c in lowering_odd_word(self.alg.n()).iter().rev() {
            acc = self.engine.ad(c, &acc);
        }
        acc
    }

    pub fn s(&self) -> Result<Elem, Error> {
        if let Some(s) = self.s_cache.borrow().as_ref() {
            return Ok(s.clone());
        }
        let s = self.lowered_by_top(&self.t()?);
        *self.s_cache.borrow_mut() = Some(s.clone());
        Ok(s)
    }

    /// ad_Y(z·T) for an even element z.
    pub fn s_with(&self, z: &Elem) -> Result<Elem, Error> {
        let zt = self.engine.mul(z, &self.t()?);
        Ok(self.lowered_by_top(&zt))
    }

    /// Trace of the k-th power of the matrix of gl generators: the classic
    /// central elements of U(gl(n)).
    pub fn gelfand(&self, k: usize) -> Elem {
        assert!(k >= 1, "power must be positive");
        let n = self.alg.n();
        let mut acc = Elem::zero();
        let mut cycle = vec![0usize; k];
        loop {
            let mut word = Vec::with_capacity(k);
            for p in 0..k {
                word.push(BasisElem::e(cycle[p], cycle[(p + 1) % k]));
            }
            acc = acc.add(&self.engine.product_of(&word));
            // Odometer over the k indices.
            let mut p = 0;
            loop {
                if p == k {
                    return acc;
                }
                cycle[p] += 1;
                if cycle[p] < n {
                    break;
                }
                cycle[p] = 0;
                p += 1;
            }
        }
    }

    /// The polynomial by which a weight-zero element acts on a highest
    /// vector of weight μ: its diagonal symbol in the triangular order.
    pub fn eigenvalue_polynomial(&self, u: &Elem) -> WeightPoly {
        self.tri.diagonal_symbol(&self.tri.import(u))
    }

    /// The proportionality constant between the eigenvalue polynomial of S
    /// and the all-pairs product Θ. Errors if they fail to be proportional.
    pub fn kappa(&self) -> Result<Scalar, Error> {
        let q = self.eigenvalue_polynomial(&self.s()?);
        let theta = theta_poly(self.alg.n());
        let (m0, c0) = theta
            .terms()
            .next()
            .expect("the all-pairs product is never zero");
        let qc = q
            .terms()
            .find(|(m, _)| *m == m0)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Scalar::zero);
        let kappa = &qc / c0;
        if q == theta.scale(&kappa) {
            Ok(kappa)
        } else {
            Err(Error::Unsupported(
                "eigenvalue polynomial is not proportional to the all-pairs product".into(),
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalg::BasisElem as BE;
    use crate::verma::VermaModule;

    fn builder(n: usize) -> CenterBuilder {
        CenterBuilder::new(Rc::new(Algebra::new(n).unwrap()))
    }

    #[test]
    fn phi_images_of_the_three_rank_two_generators() {
        let cb = builder(2);
        let e = |i, j| cb.engine().gen(BE::e(i, j));
        let phi_of = |x| cb.phi(&cb.engine().gen(x));
        assert_eq!(phi_of(BE::b(0, 0)), e(0, 1));
        assert_eq!(phi_of(BE::b(0, 1)), e(0, 0).sub(&e(1, 1)));
        assert_eq!(phi_of(BE::b(1, 1)), e(1, 0).neg());
    }

    #[test]
    fn phi_is_injective_at_rank_two() {
        let cb = builder(2);
        assert_eq!(cb.wedge_basis().len(), 3);
        assert!(cb.phi_kernel().is_empty());
    }

    #[test]
    fn rank_two_gram_matrix_is_the_hand_computed_one() {
        let cb = builder(2);
        let data = cb.invariant_data().unwrap();
        let g: Vec<Vec<Scalar>> = data
            .images
            .iter()
            .map(|a| {
                data.images
                    .iter()
                    .map(|b| cb.invariant_form(a, b))
                    .collect()
            })
            .collect();
        let s = Scalar::from_int;
        assert_eq!(
            g,
            vec![
                vec![s(0), s(0), s(-1)],
                vec![s(0), s(2), s(0)],
                vec![s(-1), s(0), s(0)],
            ]
        );
    }

    #[test]
    fn the_form_is_symmetric_and_normalized() {
        let cb = builder(2);
        let one = cb.engine().one();
        assert_eq!(cb.invariant_form(&one, &one), Scalar::one());
        let u = cb.engine().product_of(&[BE::e(0, 0), BE::e(0, 1)]);
        let v = cb.engine().product_of(&[BE::e(1, 0), BE::e(1, 1)]);
        assert_eq!(cb.invariant_form(&u, &v), cb.invariant_form(&v, &u));
        // Mixed degrees see nothing of each other.
        let w = cb.engine().gen(BE::e(0, 0));
        assert_eq!(cb.invariant_form(&u, &w), Scalar::zero());
    }

    #[test]
    fn t_at_rank_two_matches_the_hand_computation() {
        let cb = builder(2);
        assert_eq!(
            cb.t().unwrap().render(),
            "B11*E21 + 1/2*B12*E11 - 1/2*B12*E22 - B22*E12"
        );
    }

    #[test]
    fn t_is_equivariant_with_the_expected_diagonal_character() {
        let cb = builder(2);
        let t = cb.t().unwrap();
        let n = 2i64;
        for i in 0..2 {
            for j in 0..2 {
                let got = cb.engine().ad(BE::e(i, j), &t);
                let want = if i == j {
                    t.scale(&Scalar::from_int(n - 1))
                } else {
                    Elem::zero()
                };
                assert_eq!(got, want, "ad E({i},{j})");
            }
        }
    }

    #[test]
    fn projecting_y_t_reproduces_the_dual_pairing_sum() {
        let cb = builder(2);
        let data = cb.invariant_data().unwrap();
        let direct = cb
            .engine()
            .even_part(&cb.engine().mul(&cb.top_lowering(), &data.t));
        let mut pairing_sum = Elem::zero();
        for (u, ud) in data.images.iter().zip(&data.duals) {
            pairing_sum = pairing_sum.add(&cb.engine().mul(u, ud));
        }
        assert_eq!(direct, pairing_sum);
        assert!(!direct.is_zero());
    }

    #[test]
    fn eigenvalue_polynomial_of_s_is_a_scalar_times_theta() {
        let cb = builder(2);
        let q = cb.eigenvalue_polynomial(&cb.s().unwrap());
        let expected = theta_poly(2).scale(&Scalar::new(-1, 2));
        assert_eq!(q, expected);
        assert_eq!(cb.kappa().unwrap(), Scalar::new(-1, 2));
    }

    #[test]
    fn s_acts_on_a_numeric_highest_vector_by_kappa_theta() {
        let cb = builder(2);
        let s = cb.s().unwrap();
        let mu = [Scalar::from_int(1), Scalar::from_int(0)];
        let m = VermaModule::numeric(Rc::new(Algebra::new(2).unwrap()), &mu).unwrap();
        let got = m.act(&s, &m.highest());
        assert_eq!(got.num_terms(), 1, "S moved the highest vector off its line");
        // Θ(1,0) = -3 and κ = -1/2, so the scalar is 3/2.
        assert_eq!(
            got.highest_coefficient().constant_term(),
            Scalar::new(3, 2)
        );
    }

    #[test]
    fn inserting_a_central_factor_multiplies_the_eigenvalue() {
        let cb = builder(2);
        let s_poly = cb.eigenvalue_polynomial(&cb.s().unwrap());
        for k in 1..=2 {
            let z = cb.gelfand(k);
            let sz = cb.s_with(&z).unwrap();
            let got = cb.eigenvalue_polynomial(&sz);
            let want = cb.eigenvalue_polynomial(&z).mul(&s_poly);
            assert_eq!(got, want, "k = {k}");
        }
    }

    #[test]
    fn gelfand_elements_have_the_classical_diagonal_symbols() {
        let cb = builder(2);
        let m1 = cb.eigenvalue_polynomial(&cb.gelfand(1));
        let x = WeightPoly::var(2, 0);
        let y = WeightPoly::var(2, 1);
        assert_eq!(m1, x.add(&y));
        // tr(E²) straightens to E11² + E22² + 2·E21E12 + E11 - E22.
        let m2 = cb.eigenvalue_polynomial(&cb.gelfand(2));
        assert_eq!(m2, x.pow(2).add(&y.pow(2)).add(&x).sub(&y));
    }
}
