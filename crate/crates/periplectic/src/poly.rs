//! Sparse multivariate polynomials over the rationals.
//!
//! Variables are indexed, not named; a polynomial knows only how many
//! variables its universe has. Monomials are kept in a sorted map under
//! degree-lexicographic order, zero coefficients are never stored, and all
//! arithmetic is exact, so structural equality is mathematical equality.
//!
//! The default rendering writes variable `i` as `μ{i+1}`; callers that work
//! in an extended universe (an extra deformation variable, say) can supply
//! their own names via [`WeightPoly::render`].

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Scalar;
use crate::Error;

/// Exponent vector, dense over the universe's variables.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Mono(pub Vec<u16>);

impl Mono {
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    fn one(nvars: usize) -> Self {
        Mono(vec![0; nvars])
    }

    fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Ord for Mono {
    /// Degree first, then lexicographic on exponents.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct WeightPoly {
    nvars: usize,
    terms: BTreeMap<Mono, Scalar>,
}

impl WeightPoly {
    pub fn zero(nvars: usize) -> Self {
        WeightPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = WeightPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Mono::one(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        WeightPoly::constant(nvars, Scalar::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        let mut p = WeightPoly::zero(nvars);
        p.terms.insert(Mono(exps), Scalar::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Mono::is_one)
    }

    /// Total degree; zero polynomial reports 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Mono::degree).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Scalar)> {
        self.terms.iter()
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> Scalar {
        self.terms
            .get(&Mono::one(self.nvars))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    fn assert_same_universe(&self, other: &WeightPoly) {
        assert_eq!(
            self.nvars, other.nvars,
            "polynomials from different universes"
        );
    }

    fn insert(&mut self, m: Mono, c: Scalar) {
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

    pub fn add(&self, other: &WeightPoly) -> WeightPoly {
        self.assert_same_universe(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &WeightPoly) -> WeightPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> WeightPoly {
        WeightPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> WeightPoly {
        if c.is_zero() {
            return WeightPoly::zero(self.nvars);
        }
        WeightPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &WeightPoly) -> WeightPoly {
        self.assert_same_universe(other);
        let mut out = WeightPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> WeightPoly {
        let mut acc = WeightPoly::one(self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> WeightPoly {
        assert!(i < self.nvars, "variable index out of universe");
        let mut out = WeightPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut lowered = m.clone();
            lowered.0[i] = e - 1;
            out.insert(lowered, c * &Scalar::from_int(e as i64));
        }
        out
    }

    /// Evaluates at a rational point. The point must supply exactly one
    /// value per variable of the universe.
    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar, Error> {
        if point.len() != self.nvars {
            return Err(Error::Arity {
                expected: self.nvars,
                got: point.len(),
            });
        }
        let mut total = Scalar::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term *= point[i].pow(e as u32);
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Substitutes a polynomial for each variable. All substituted
    /// polynomials must share one universe, which becomes the universe of
    /// the result.
    pub fn eval_poly(&self, values: &[WeightPoly]) -> Result<WeightPoly, Error> {
        if values.len() != self.nvars {
            return Err(Error::Arity {
                expected: self.nvars,
                got: values.len(),
            });
        }
        let out_nvars = match values.first() {
            Some(v) => v.nvars,
            None => 0,
        };
        for v in values {
            if v.nvars != out_nvars {
                return Err(Error::Arity {
                    expected: out_nvars,
                    got: v.nvars,
                });
            }
        }
        let mut total = WeightPoly::zero(out_nvars);
        for (m, c) in &self.terms {
            let mut term = WeightPoly::constant(out_nvars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&values[i].pow(e as u32));
                }
            }
            total = total.add(&term);
        }
        Ok(total)
    }

    /// Renders with caller-supplied variable names.
    pub fn render(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.nvars, "one name per variable");
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        // Highest monomial first reads like handwritten algebra.
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            let abs = c.abs();
            let coeff_part = if factors.is_empty() || !abs.is_one() {
                Some(abs.to_string())
            } else {
                None
            };
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
            if let Some(cp) = coeff_part {
                pieces.push(cp);
            }
            pieces.extend(factors);
            out.push_str(&pieces.join("*"));
        }
        out
    }

    fn default_names(&self) -> Vec<String> {
        (0..self.nvars).map(|i| format!("μ{}", i + 1)).collect()
    }
}

impl fmt::Display for WeightPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&self.default_names()))
    }
}

impl fmt::Debug for WeightPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
