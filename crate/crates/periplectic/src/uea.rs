//! The universal enveloping algebra of p(n), with straightening to a PBW
//! basis.
//!
//! A monomial is a product of basis generators sorted under a chosen total
//! order, odd generators appearing at most once. Multiplication rewrites
//! out-of-order adjacent pairs with xy = ±yx + [x,y] until everything is
//! sorted; the recursion is memoized per (monomial, generator) pair.
//!
//! Two orders are used downstream and the engine is parameterized by them:
//!
//! * `ByGrade`: symmetric-odd generators, then the gl part, then skew-odd.
//!   Projecting onto monomials without odd factors lands in U(gl(n)).
//! * `ByTriangular`: lowering operators (skew-odd, then strictly lower gl),
//!   then the diagonal, then raising operators (strictly upper gl, then
//!   symmetric-odd). This is the order adapted to highest-weight modules:
//!   the monomials that act by scalars on a highest vector are exactly the
//!   pure-diagonal ones.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;

use crate::poly::WeightPoly;
use crate::scalar::Scalar;
use crate::superalg::{Algebra, BasisElem, LinComb, Parity};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PbwOrder {
    ByGrade,
    ByTriangular,
}

impl PbwOrder {
    /// Total order on generators; monomials keep factors with ascending keys.
    pub fn key(self, x: BasisElem) -> (u8, u8, u8) {
        match self {
            PbwOrder::ByGrade => match x {
                BasisElem::B(i, j) => (0, i, j),
                BasisElem::E(i, j) => (1, i, j),
                BasisElem::C(i, j) => (2, i, j),
            },
            PbwOrder::ByTriangular => match x {
                BasisElem::C(i, j) => (0, i, j),
                BasisElem::E(i, j) if i > j => (1, i, j),
                BasisElem::E(i, j) if i == j => (2, i, j),
                BasisElem::E(i, j) => (3, i, j),
                BasisElem::B(i, j) => (4, i, j),
            },
        }
    }
}

/// Whether a generator lowers, fixes or raises weights in the triangular
/// picture (skew-odd and strictly-lower gl lower; their transposes raise).
pub fn triangular_class(x: BasisElem) -> i8 {
    match x {
        BasisElem::C(..) => -1,
        BasisElem::E(i, j) if i > j => -1,
        BasisElem::E(i, j) if i == j => 0,
        BasisElem::E(..) => 1,
        BasisElem::B(..) => 1,
    }
}

/// Sorted product of generators with multiplicities. Odd generators always
/// carry exponent 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct PbwMono(pub Vec<(BasisElem, u16)>);

impl PbwMono {
    pub fn one() -> Self {
        PbwMono(Vec::new())
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e as u32).sum()
    }

    pub fn parity(&self) -> Parity {
        let odd_count: u32 = self
            .0
            .iter()
            .filter(|(x, _)| x.parity() == Parity::Odd)
            .map(|&(_, e)| e as u32)
            .sum();
        if odd_count % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn grade(&self) -> i64 {
        self.0
            .iter()
            .map(|&(x, e)| x.grade() as i64 * e as i64)
            .sum()
    }

    pub fn weight(&self, n: usize) -> Vec<i64> {
        let mut w = vec![0i64; n];
        for &(x, e) in &self.0 {
            for (slot, v) in w.iter_mut().zip(x.weight(n)) {
                *slot += v * e as i64;
            }
        }
        w
    }

    pub fn is_even_subalgebra(&self) -> bool {
        self.0.iter().all(|(x, _)| x.parity() == Parity::Even)
    }

    pub fn is_diagonal(&self) -> bool {
        self.0
            .iter()
            .all(|(x, _)| matches!(x, BasisElem::E(i, j) if i == j))
    }
}

/// Element of the enveloping algebra: rational combination of sorted
/// monomials. The data is only meaningful relative to the engine order that
/// produced it.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Elem {
    terms: BTreeMap<PbwMono, Scalar>,
}

impl Elem {
    pub fn zero() -> Self {
        Elem::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMono, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn insert(&mut self, m: PbwMono, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
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

    pub fn add(&self, other: &Elem) -> Elem {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Elem) -> Elem {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Elem {
        Elem {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &Scalar) -> Elem {
        if k.is_zero() {
            return Elem::zero();
        }
        Elem {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    /// Parity when every monomial agrees, `None` for mixed elements.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(PbwMono::parity);
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    /// Common weight of all monomials, `None` for mixed or zero elements.
    pub fn weight(&self, n: usize) -> Option<Vec<i64>> {
        let mut it = self.terms.keys().map(|m| m.weight(n));
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    /// Renders with `*` between factors and `^` for exponents, terms in the
    /// monomial order of the underlying map.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let mut factors: Vec<String> = Vec::new();
            for &(x, e) in &m.0 {
                if e == 1 {
                    factors.push(x.to_string());
                } else {
                    factors.push(format!("{x}^{e}"));
                }
            }
            let abs = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mut pieces: Vec<String> = Vec::new();
            if factors.is_empty() || !abs.is_one() {
                pieces.push(abs.to_string());
            }
            pieces.extend(factors);
            out.push_str(&pieces.join("*"));
        }
        out
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Straightening engine for one fixed order.
pub struct Uea {
    alg: Rc<Algebra>,
    order: PbwOrder,
    memo: RefCell<HashMap<(PbwMono, BasisElem), Elem>>,
}

impl Uea {
    pub fn new(alg: Rc<Algebra>, order: PbwOrder) -> Self {
        Uea {
            alg,
            order,
            memo: RefCell::new(HashMap::new()),
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn order(&self) -> PbwOrder {
        self.order
    }

    pub fn one(&self) -> Elem {
        let mut e = Elem::zero();
        e.insert(PbwMono::one(), Scalar::one());
        e
    }

    pub fn gen(&self, x: BasisElem) -> Elem {
        let mut e = Elem::zero();
        e.insert(PbwMono(vec![(x, 1)]), Scalar::one());
        e
    }

    pub fn from_comb(&self, comb: &LinComb) -> Elem {
        let mut e = Elem::zero();
        for (&x, c) in comb {
            e.insert(PbwMono(vec![(x, 1)]), c.clone());
        }
        e
    }

    /// Right-multiplies a sorted monomial by one generator, straightening.
    fn mul_mono_gen(&self, m: &PbwMono, g: BasisElem) -> Elem {
        if let Some(hit) = self.memo.borrow().get(&(m.clone(), g)) {
            return hit.clone();
        }
        let result = self.mul_mono_gen_uncached(m, g);
        self.memo
            .borrow_mut()
            .insert((m.clone(), g), result.clone());
        result
    }

    fn mul_mono_gen_uncached(&self, m: &PbwMono, g: BasisElem) -> Elem {
        let Some(&(last, e)) = m.0.last() else {
            return self.gen(g);
        };
        let mut out = Elem::zero();
        if self.order.key(last) < self.order.key(g) {
            let mut factors = m.0.clone();
            factors.push((g, 1));
            out.insert(PbwMono(factors), Scalar::one());
            return out;
        }
        if last == g && g.parity() == Parity::Even {
            let mut factors = m.0.clone();
            factors.last_mut().unwrap().1 += 1;
            out.insert(PbwMono(factors), Scalar::one());
            return out;
        }
        // Peel one copy of the last factor.
        let mut rest = m.0.clone();
        if e > 1 {
            rest.last_mut().unwrap().1 -= 1;
        } else {
            rest.pop();
        }
        let rest = PbwMono(rest);
        if last == g {
            // Odd square: g·g = [g,g]/2 inside the enveloping algebra.
            let half = Scalar::new(1, 2);
            for (&z, c) in self.alg.bracket(g, g) {
                let contrib = self.mul_mono_gen(&rest, z).scale(&(c * &half));
                out = out.add(&contrib);
            }
            return out;
        }
        // last·g = ±g·last + [last, g]
        let swapped = self.mul_gen(&self.mul_mono_gen(&rest, g), last);
        let swapped = if last.parity().swap_is_negative(g.parity()) {
            swapped.neg()
        } else {
            swapped
        };
        out = out.add(&swapped);
        for (&z, c) in self.alg.bracket(last, g) {
            out = out.add(&self.mul_mono_gen(&rest, z).scale(c));
        }
        out
    }

    pub fn mul_gen(&self, a: &Elem, g: BasisElem) -> Elem {
        let mut out = Elem::zero();
        for (m, c) in &a.terms {
            out = out.add(&self.mul_mono_gen(m, g).scale(c));
        }
        out
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let mut out = Elem::zero();
        for (m, c) in &b.terms {
            let mut acc = a.scale(c);
            for &(x, e) in &m.0 {
                for _ in 0..e {
                    acc = self.mul_gen(&acc, x);
                }
            }
            out = out.add(&acc);
        }
        out
    }

    /// Normal form of an arbitrary word of generators.
    pub fn product_of(&self, word: &[BasisElem]) -> Elem {
        let mut acc = self.one();
        for &x in word {
            acc = self.mul_gen(&acc, x);
        }
        acc
    }

    /// ad_x(u) = xu - (-1)^{|x||u|} ux, extended over the monomials of u.
    pub fn ad(&self, x: BasisElem, u: &Elem) -> Elem {
        let xe = self.gen(x);
        let mut out = Elem::zero();
        for (m, c) in &u.terms {
            let mut me = Elem::zero();
            me.insert(m.clone(), c.clone());
            let left = self.mul(&xe, &me);
            let right = self.mul(&me, &xe);
            let right = if x.parity().swap_is_negative(m.parity()) {
                right
            } else {
                right.neg()
            };
            out = out.add(&left).add(&right);
        }
        out
    }

    pub fn ad_comb(&self, xs: &LinComb, u: &Elem) -> Elem {
        let mut out = Elem::zero();
        for (&x, c) in xs {
            out = out.add(&self.ad(x, u).scale(c));
        }
        out
    }

    /// Re-straightens an element produced by an engine with another order.
    /// Each monomial is treated as the product of its factors as written.
    pub fn import(&self, e: &Elem) -> Elem {
        let mut out = Elem::zero();
        for (m, c) in &e.terms {
            let mut acc = self.one().scale(c);
            for &(x, k) in &m.0 {
                for _ in 0..k {
                    acc = self.mul_gen(&acc, x);
                }
            }
            out = out.add(&acc);
        }
        out
    }

    /// Keeps the monomials lying in U(gl(n)): no odd factors at all.
    pub fn even_part(&self, e: &Elem) -> Elem {
        Elem {
            terms: e
                .terms
                .iter()
                .filter(|(m, _)| m.is_even_subalgebra())
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Projection onto U(h) along the triangular decomposition, read off as
    /// a polynomial: E(i,i)^k becomes the k-th power of the i-th coordinate.
    /// Only sensible for the `ByTriangular` engine.
    pub fn diagonal_symbol(&self, e: &Elem) -> WeightPoly {
        assert_eq!(
            self.order,
            PbwOrder::ByTriangular,
            "diagonal projection needs the triangular order"
        );
        let n = self.alg.n();
        let mut p = WeightPoly::zero(n);
        for (m, c) in &e.terms {
            if !m.is_diagonal() {
                continue;
            }
            let mut term = WeightPoly::constant(n, c.clone());
            for &(x, k) in &m.0 {
                let BasisElem::E(i, _) = x else { unreachable!() };
                term = term.mul(&WeightPoly::var(n, i as usize).pow(k as u32));
            }
            p = p.add(&term);
        }
        p
    }

    /// Slow reference normalizer: rewrites one random out-of-order adjacent
    /// pair at a time until every word is sorted. Exists to cross-check the
    /// memoized recursion; the two must agree on every input.
    pub fn slow_normal_form<R: rand::Rng>(&self, word: &[BasisElem], rng: &mut R) -> Elem {
        let mut queue: Vec<(Vec<BasisElem>, Scalar)> = vec![(word.to_vec(), Scalar::one())];
        let mut done = Elem::zero();
        while let Some((w, coeff)) = queue.pop() {
            // Adjacent equal even factors are fine (they merge into an
            // exponent); equal odd factors must be rewritten away.
            let violations: Vec<usize> = (0..w.len().saturating_sub(1))
                .filter(|&k| {
                    self.order.key(w[k]) > self.order.key(w[k + 1])
                        || (w[k] == w[k + 1] && w[k].parity() == Parity::Odd)
                })
                .collect();
            if violations.is_empty() {
                let mut factors: Vec<(BasisElem, u16)> = Vec::new();
                for &x in &w {
                    match factors.last_mut() {
                        Some((y, e)) if *y == x => *e += 1,
                        _ => factors.push((x, 1)),
                    }
                }
                done.insert(PbwMono(factors), coeff);
                continue;
            }
            let k = violations[rng.gen_range(0..violations.len())];
            let (x, y) = (w[k], w[k + 1]);
            if x == y {
                // Odd square: xx = [x,x]/2, spliced in component by component.
                for (&z, c) in self.alg.bracket(x, x) {
                    let mut nw = w.clone();
                    nw.splice(k..k + 2, [z]);
                    queue.push((nw, &coeff * &(c * &Scalar::new(1, 2))));
                }
                continue;
            }
            let mut swapped = w.clone();
            swapped.swap(k, k + 1);
            let sign = if x.parity().swap_is_negative(y.parity()) {
                -coeff.clone()
            } else {
                coeff.clone()
            };
            queue.push((swapped, sign));
            for (&z, c) in self.alg.bracket(x, y) {
                let mut nw = w.clone();
                nw.splice(k..k + 2, [z]);
                queue.push((nw, &coeff * c));
            }
        }
        done
    }
}
