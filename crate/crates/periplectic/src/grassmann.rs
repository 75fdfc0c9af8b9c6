//! Polynomial superring: commuting even generators and anticommuting odd
//! generators over the rationals.
//!
//! An odd monomial is a strictly increasing index subset stored as a bitmask;
//! reordering flips the sign once per transposition and a repeated odd
//! generator kills the term. Even generators behave like ordinary polynomial
//! variables and commute with everything.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Scalar;

/// Names of the generators; the factory for elements of one universe.
#[derive(Clone, Debug)]
pub struct GrassmannRing {
    pub even_names: Vec<String>,
    pub odd_names: Vec<String>,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct GMono {
    even: Vec<u16>,
    odd: u64,
}

impl GMono {
    fn degree(&self) -> u32 {
        self.even.iter().map(|&e| e as u32).sum::<u32>() + self.odd.count_ones()
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct GrassmannPoly {
    n_even: usize,
    n_odd: usize,
    terms: BTreeMap<GMono, Scalar>,
}

/// Sign picked up when concatenating odd index sets `a` then `b` and sorting
/// the result. `None` when the sets overlap (the product vanishes).
pub(crate) fn merge_sign(a: u64, b: u64) -> Option<bool> {
    if a & b != 0 {
        return None;
    }
    let mut inversions = 0u32;
    let mut bits = b;
    while bits != 0 {
        let j = bits.trailing_zeros();
        // Generators of `a` with index above j must hop over this one.
        inversions += (a >> (j + 1)).count_ones();
        bits &= bits - 1;
    }
    Some(inversions % 2 == 1)
}

impl GrassmannRing {
    pub fn new(even_names: Vec<String>, odd_names: Vec<String>) -> Self {
        assert!(odd_names.len() <= 64, "at most 64 odd generators");
        GrassmannRing {
            even_names,
            odd_names,
        }
    }

    pub fn n_even(&self) -> usize {
        self.even_names.len()
    }

    pub fn n_odd(&self) -> usize {
        self.odd_names.len()
    }

    pub fn zero(&self) -> GrassmannPoly {
        GrassmannPoly {
            n_even: self.n_even(),
            n_odd: self.n_odd(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(&self, c: Scalar) -> GrassmannPoly {
        let mut p = self.zero();
        if !c.is_zero() {
            p.terms.insert(
                GMono {
                    even: vec![0; self.n_even()],
                    odd: 0,
                },
                c,
            );
        }
        p
    }

    pub fn one(&self) -> GrassmannPoly {
        self.constant(Scalar::one())
    }

    pub fn even_var(&self, i: usize) -> GrassmannPoly {
        assert!(i < self.n_even(), "even generator index out of range");
        let mut even = vec![0; self.n_even()];
        even[i] = 1;
        let mut p = self.zero();
        p.terms.insert(GMono { even, odd: 0 }, Scalar::one());
        p
    }

    pub fn odd_var(&self, i: usize) -> GrassmannPoly {
        assert!(i < self.n_odd(), "odd generator index out of range");
        let mut p = self.zero();
        p.terms.insert(
            GMono {
                even: vec![0; self.n_even()],
                odd: 1u64 << i,
            },
            Scalar::one(),
        );
        p
    }

    pub fn render(&self, p: &GrassmannPoly) -> String {
        assert_eq!(p.n_even, self.n_even(), "element from another universe");
        assert_eq!(p.n_odd, self.n_odd(), "element from another universe");
        if p.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in p.terms.iter().rev().enumerate() {
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.even.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.even_names[i].clone()),
                    _ => factors.push(format!("{}^{}", self.even_names[i], e)),
                }
            }
            for j in 0..self.n_odd() {
                if m.odd & (1u64 << j) != 0 {
                    factors.push(self.odd_names[j].clone());
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

impl GrassmannPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(GMono::degree).max().unwrap_or(0)
    }

    fn assert_same_universe(&self, other: &GrassmannPoly) {
        assert_eq!(self.n_even, other.n_even, "mixed Grassmann universes");
        assert_eq!(self.n_odd, other.n_odd, "mixed Grassmann universes");
    }

    fn insert(&mut self, m: GMono, c: Scalar) {
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

    pub fn add(&self, other: &GrassmannPoly) -> GrassmannPoly {
        self.assert_same_universe(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &GrassmannPoly) -> GrassmannPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> GrassmannPoly {
        GrassmannPoly {
            n_even: self.n_even,
            n_odd: self.n_odd,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> GrassmannPoly {
        if c.is_zero() {
            return GrassmannPoly {
                n_even: self.n_even,
                n_odd: self.n_odd,
                terms: BTreeMap::new(),
            };
        }
        GrassmannPoly {
            n_even: self.n_even,
            n_odd: self.n_odd,
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &GrassmannPoly) -> GrassmannPoly {
        self.assert_same_universe(other);
        let mut out = GrassmannPoly {
            n_even: self.n_even,
            n_odd: self.n_odd,
            terms: BTreeMap::new(),
        };
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let Some(flip) = merge_sign(ma.odd, mb.odd) else {
                    continue;
                };
                let even = ma
                    .even
                    .iter()
                    .zip(&mb.even)
                    .map(|(a, b)| a + b)
                    .collect();
                let mut c = ca * cb;
                if flip {
                    c = -c;
                }
                out.insert(
                    GMono {
                        even,
                        odd: ma.odd | mb.odd,
                    },
                    c,
                );
            }
        }
        out
    }

    /// Substitutes rational values for every even generator; odd generators
    /// survive. The result lives in a universe with no even generators.
    pub fn eval_even(&self, values: &[Scalar]) -> GrassmannPoly {
        assert_eq!(values.len(), self.n_even, "one value per even generator");
        let mut out = GrassmannPoly {
            n_even: 0,
            n_odd: self.n_odd,
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            let mut k = c.clone();
            for (i, &e) in m.even.iter().enumerate() {
                if e > 0 {
                    k *= values[i].pow(e as u32);
                }
            }
            out.insert(
                GMono {
                    even: vec![],
                    odd: m.odd,
                },
                k,
            );
        }
        out
    }

    /// The part with no odd generators, as a plain polynomial in the evens.
    pub fn body(&self) -> GrassmannPoly {
        GrassmannPoly {
            n_even: self.n_even,
            n_odd: self.n_odd,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.odd == 0)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficient of the exact odd monomial `mask`, with the odd part
    /// stripped off (an even-only element).
    pub fn coeff_of_odd(&self, mask: u64) -> GrassmannPoly {
        GrassmannPoly {
            n_even: self.n_even,
            n_odd: self.n_odd,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.odd == mask)
                .map(|(m, c)| {
                    (
                        GMono {
                            even: m.even.clone(),
                            odd: 0,
                        },
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    /// For an element with no even generators left, the coefficient of the
    /// constant monomial.
    pub fn constant_term(&self) -> Scalar {
        self.terms
            .iter()
            .find(|(m, _)| m.degree() == 0)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Scalar::zero)
    }

    /// Coefficient of a single even generator at degree one, ignoring all
    /// terms that involve odd generators or higher even degree.
    pub fn linear_even_coeff(&self, i: usize) -> Scalar {
        for (m, c) in &self.terms {
            if m.odd == 0
                && m.even.iter().enumerate().all(|(k, &e)| {
                    if k == i {
                        e == 1
                    } else {
                        e == 0
                    }
                })
            {
                return c.clone();
            }
        }
        Scalar::zero()
    }
}

impl fmt::Debug for GrassmannPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GrassmannPoly({} even, {} odd, {} terms)",
            self.n_even,
            self.n_odd,
            self.terms.len()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xi_ring() -> GrassmannRing {
        GrassmannRing::new(
            vec!["x".to_string()],
            vec!["ξ1".to_string(), "ξ2".to_string()],
        )
    }

    #[test]
    fn odd_generators_anticommute() {
        let r = xi_ring();
        let (a, b) = (r.odd_var(0), r.odd_var(1));
        assert_eq!(a.mul(&b), b.mul(&a).neg());
        assert_eq!(r.render(&a.mul(&b)), "ξ1*ξ2");
        assert_eq!(r.render(&b.mul(&a)), "-ξ1*ξ2");
    }

    #[test]
    fn odd_squares_vanish() {
        let r = xi_ring();
        let a = r.odd_var(0);
        assert!(a.mul(&a).is_zero());
    }

    #[test]
    fn mixed_product_keeps_the_even_square() {
        // (x + ξ1)(x - ξ1) = x^2 (the cross terms cancel, ξ1^2 = 0)
        let r = xi_ring();
        let x = r.even_var(0);
        let a = r.odd_var(0);
        let got = x.add(&a).mul(&x.sub(&a));
        assert_eq!(got, x.mul(&x));
    }

    #[test]
    fn even_generators_commute_with_everything() {
        let r = xi_ring();
        let x = r.even_var(0);
        let a = r.odd_var(0);
        assert_eq!(x.mul(&a), a.mul(&x));
    }

    #[test]
    fn merge_sign_counts_transpositions() {
        // ξ3 * ξ1ξ2 needs two hops: sign +.
        assert_eq!(merge_sign(0b100, 0b011), Some(false));
        // ξ2 * ξ1 needs one hop: sign -.
        assert_eq!(merge_sign(0b10, 0b01), Some(true));
        assert_eq!(merge_sign(0b1, 0b1), None);
    }

    #[test]
    fn eval_even_and_coefficient_extraction() {
        let r = xi_ring();
        let x = r.even_var(0);
        let a = r.odd_var(0);
        let p = x.mul(&a).add(&x.mul(&x)); // x*ξ1 + x^2
        let at_3 = p.eval_even(&[Scalar::from_int(3)]);
        assert_eq!(at_3.coeff_of_odd(0b1).constant_term(), Scalar::from_int(3));
        assert_eq!(at_3.body().constant_term(), Scalar::from_int(9));
    }

    #[test]
    fn triple_products_respect_associativity_signs() {
        let r = GrassmannRing::new(vec![], (0..3).map(|i| format!("ξ{}", i + 1)).collect());
        let (a, b, c) = (r.odd_var(0), r.odd_var(1), r.odd_var(2));
        let left = a.mul(&b).mul(&c);
        let right = a.mul(&b.mul(&c));
        assert_eq!(left, right);
        // Full reversal of three odd factors is one 3-cycle worth of swaps: sign -.
        assert_eq!(c.mul(&b).mul(&a), left.neg());
    }
}
