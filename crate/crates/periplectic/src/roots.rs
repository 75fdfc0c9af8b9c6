//! Root data for p(n) in the ε-coordinate lattice.
//!
//! Weights live in Q^n written in the ε basis. The even roots are the
//! gl(n) ones ε_i - ε_j; the odd roots come in two families, ε_i + ε_j
//! (i ≤ j, the symmetric side, including the doubled 2ε_i) and
//! -ε_i - ε_j (i < j, the skew side). Root vectors themselves live in
//! the matrix algebra; this module only handles the combinatorics.

use crate::poly::WeightPoly;
use crate::scalar::Scalar;

/// ε_i - ε_j for all i ≠ j, as integer coordinate vectors.
pub fn even_roots(n: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut r = vec![0i64; n];
                r[i] = 1;
                r[j] = -1;
                out.push(r);
            }
        }
    }
    out
}

/// ε_i - ε_j for i < j.
pub fn positive_even_roots(n: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut r = vec![0i64; n];
            r[i] = 1;
            r[j] = -1;
            out.push(r);
        }
    }
    out
}

/// ε_i + ε_j for i ≤ j: the weights of the symmetric odd piece.
pub fn odd_plus_roots(n: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            let mut r = vec![0i64; n];
            r[i] += 1;
            r[j] += 1;
            out.push(r);
        }
    }
    out
}

/// -ε_i - ε_j for i < j: the weights of the skew odd piece.
pub fn odd_minus_roots(n: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut r = vec![0i64; n];
            r[i] -= 1;
            r[j] -= 1;
            out.push(r);
        }
    }
    out
}

/// Half-sum of positive even roots: ((n-1)/2, (n-3)/2, ..., -(n-1)/2).
pub fn rho0(n: usize) -> Vec<Scalar> {
    (0..n)
        .map(|i| Scalar::new(n as i64 - 1 - 2 * i as i64, 2))
        .collect()
}

/// The ρ-shifted permutation action μ ↦ w(μ + ρ) - ρ, where a permutation
/// moves coordinates by (wλ)_i = λ_{w⁻¹(i)}. `w[i]` is the image of i.
pub fn dot_action(w: &[usize], mu: &[Scalar]) -> Vec<Scalar> {
    let n = mu.len();
    assert_eq!(w.len(), n, "permutation size");
    let rho = rho0(n);
    let mut shifted: Vec<Scalar> = (0..n).map(|i| &mu[i] + &rho[i]).collect();
    let mut permuted = vec![Scalar::zero(); n];
    for (i, &wi) in w.iter().enumerate() {
        permuted[wi] = std::mem::replace(&mut shifted[i], Scalar::zero());
    }
    (0..n).map(|i| &permuted[i] - &rho[i]).collect()
}

/// Same action on a weight whose coordinates are polynomials, so identities
/// can be checked symbolically.
pub fn dot_action_poly(w: &[usize], mu: &[WeightPoly]) -> Vec<WeightPoly> {
    let n = mu.len();
    assert_eq!(w.len(), n, "permutation size");
    let rho = rho0(n);
    let mut shifted: Vec<WeightPoly> = (0..n)
        .map(|i| mu[i].add(&WeightPoly::constant(n, rho[i].clone())))
        .collect();
    let mut permuted = vec![WeightPoly::zero(n); n];
    for (i, &wi) in w.iter().enumerate() {
        permuted[wi] = std::mem::replace(&mut shifted[i], WeightPoly::zero(n));
    }
    (0..n)
        .map(|i| permuted[i].sub(&WeightPoly::constant(n, rho[i].clone())))
        .collect()
}

/// All of S_n as image arrays, lexicographic. Guarded: factorial growth.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    assert!(n <= 8, "permutation enumeration capped at n = 8");
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    fn rec(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for k in 0..rest.len() {
            let v = rest.remove(k);
            prefix.push(v);
            rec(prefix, rest, out);
            prefix.pop();
            rest.insert(k, v);
        }
    }
    rec(&mut Vec::new(), &mut items, &mut out);
    out
}

/// The product over i < j of (μ_i - μ_j + j - i - 1), as a polynomial in the
/// coordinates of μ. Its zero set is exactly where the highest-weight module
/// picks up singular vectors from the odd directions.
pub fn delta_poly(n: usize) -> WeightPoly {
    let mut p = WeightPoly::one(n);
    for i in 0..n {
        for j in i + 1..n {
            let factor = WeightPoly::var(n, i)
                .sub(&WeightPoly::var(n, j))
                .add(&WeightPoly::constant(n, Scalar::from_int(j as i64 - i as i64 - 1)));
            p = p.mul(&factor);
        }
    }
    p
}

/// Same product taken over all ordered pairs i ≠ j. Vanishing of any factor
/// is the atypicality condition; the polynomial is invariant under the
/// ρ-shifted permutation action.
pub fn theta_poly(n: usize) -> WeightPoly {
    let coords: Vec<WeightPoly> = (0..n).map(|i| WeightPoly::var(n, i)).collect();
    theta_poly_at(&coords)
}

/// Same all-pairs product with arbitrary polynomial coordinates in place
/// of the weight, multiplied out factor by factor. Composing with an
/// affine substitution this way is much cheaper than substituting into the
/// expanded polynomial.
pub fn theta_poly_at(coords: &[WeightPoly]) -> WeightPoly {
    let n = coords.len();
    let nvars = coords[0].nvars();
    let mut p = WeightPoly::one(nvars);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let shift = j as i64 - i as i64 - 1;
            let factor = coords[i]
                .sub(&coords[j])
                .add(&WeightPoly::constant(nvars, Scalar::from_int(shift)));
            p = p.mul(&factor);
        }
    }
    p
}

/// Evaluates the i < j product directly, avoiding polynomial expansion.
pub fn delta_eval(mu: &[Scalar]) -> Scalar {
    let n = mu.len();
    let mut acc = Scalar::one();
    for i in 0..n {
        for j in i + 1..n {
            acc *= &(&mu[i] - &mu[j]) + &Scalar::from_int(j as i64 - i as i64 - 1);
        }
    }
    acc
}

/// Evaluates the all-pairs product directly.
pub fn theta_eval(mu: &[Scalar]) -> Scalar {
    let n = mu.len();
    let mut acc = Scalar::one();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc *= &(&mu[i] - &mu[j]) + &Scalar::from_int(j as i64 - i as i64 - 1);
            }
        }
    }
    acc
}

/// A weight is typical when no atypicality hyperplane contains it.
pub fn is_typical(mu: &[Scalar]) -> bool {
    !theta_eval(mu).is_zero()
}

/// Restricts a polynomial in μ to the atypicality wall where the ρ-shifted
/// weight pairs to 1 against ε_i − ε_j, by eliminating μ_i via
/// μ_i = μ_j + 1 − (ρ₀)_i + (ρ₀)_j.
pub fn restrict_to_wall(p: &WeightPoly, i: usize, j: usize) -> WeightPoly {
    let n = p.nvars();
    assert!(i != j && i < n && j < n, "wall needs two distinct coordinates");
    let rho = rho0(n);
    let mut values: Vec<WeightPoly> = (0..n).map(|k| WeightPoly::var(n, k)).collect();
    let shift = &(&Scalar::one() - &rho[i]) + &rho[j];
    values[i] = WeightPoly::var(n, j).add(&WeightPoly::constant(n, shift));
    p.eval_poly(&values).expect("universe preserved")
}

/// Whether ν lies in the ρ-shifted S_n orbit of μ. Brute force over S_n,
/// so capped at n = 8 like `permutations`.
pub fn same_central_character(mu: &[Scalar], nu: &[Scalar]) -> bool {
    assert_eq!(mu.len(), nu.len(), "weights of different rank");
    permutations(mu.len())
        .iter()
        .any(|w| dot_action(w, mu) == nu)
}
