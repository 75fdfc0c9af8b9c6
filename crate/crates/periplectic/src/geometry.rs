//! Coadjoint geometry over a Grassmann ring.
//!
//! The dual of the supertrace pairing identifies a point of the dual space
//! with a block matrix (q, s; u, qᵗ): q an arbitrary n×n block, s
//! skew-symmetric, u symmetric, with s and u carrying odd entries in the
//! symbolic setting. The orbit closure of the even dual is swept out by a
//! resolution map
//!
//!   r(c, d, y) = (y - dc,  d;  cy - yᵗc - cdc,  yᵗ + cd),
//!
//! where c and d are skew matrices of odd generators and y is an even
//! matrix. This module computes r exactly, the dimensions of odd
//! stabilizers at even points (two linear systems over the rationals), the
//! explicit equations cutting out the rank-two image, and the rank of the
//! superdifferential of r, whose generic value is the superdimension of
//! the image closure.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::grassmann::{GrassmannPoly, GrassmannRing};
use crate::linalg::Mat;
use crate::poly::WeightPoly;
use crate::scalar::Scalar;
use crate::Error;

type GMat = Vec<Vec<GrassmannPoly>>;

fn msub(a: &GMat, b: &GMat) -> GMat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x.sub(y)).collect())
        .collect()
}

fn mmul(a: &GMat, b: &GMat) -> GMat {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = a[i][0].mul(&b[0][j]);
                    for k in 1..n {
                        acc = acc.add(&a[i][k].mul(&b[k][j]));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Entry shuffle, with no extra signs; the sign rules of the super
/// transpose are theorems about products of these, not part of the
/// definition.
fn mtranspose(a: &GMat) -> GMat {
    let n = a.len();
    (0..n)
        .map(|j| (0..n).map(|i| a[i][j].clone()).collect())
        .collect()
}

fn mat_is_zero(a: &GMat) -> bool {
    a.iter().all(|r| r.iter().all(|p| p.is_zero()))
}

/// Index of the pair (i, j), i < j, in lexicographic order.
fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// A point of the parameter space: two skew matrices of odd generators and
/// one even matrix. All three live in a single Grassmann universe so that
/// the resolution map can mix them.
#[derive(Clone, Debug)]
pub struct VPoint {
    ring: GrassmannRing,
    n: usize,
    c: GMat,
    d: GMat,
    y: GMat,
}

impl VPoint {
    fn ring_for(n: usize) -> GrassmannRing {
        let mut even = Vec::new();
        for i in 0..n {
            for j in 0..n {
                even.push(format!("y{}{}", i + 1, j + 1));
            }
        }
        let mut odd = Vec::new();
        for name in ["c", "d"] {
            for i in 0..n {
                for j in i + 1..n {
                    odd.push(format!("{}{}{}", name, i + 1, j + 1));
                }
            }
        }
        GrassmannRing::new(even, odd)
    }

    /// Skew matrix whose strictly upper entries are the odd generators
    /// starting at `offset`.
    fn skew_gens(ring: &GrassmannRing, n: usize, offset: usize) -> GMat {
        let mut m: GMat = vec![vec![ring.zero(); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let g = ring.odd_var(offset + pair_index(n, i, j));
                m[i][j] = g.clone();
                m[j][i] = g.neg();
            }
        }
        m
    }

    /// Fully symbolic point: every coordinate its own generator.
    pub fn symbolic(n: usize) -> VPoint {
        let ring = Self::ring_for(n);
        let pairs = n * (n - 1) / 2;
        let c = Self::skew_gens(&ring, n, 0);
        let d = Self::skew_gens(&ring, n, pairs);
        let y = (0..n)
            .map(|i| (0..n).map(|j| ring.even_var(i * n + j)).collect())
            .collect();
        VPoint { ring, n, c, d, y }
    }

    /// Point with the even part anchored at a numeric matrix plus a formal
    /// deviation in every coordinate; extracting the linear part of the
    /// image in the deviations and in the odd generators gives the
    /// superdifferential of the resolution map at (0, 0, y0).
    pub fn linearized_at(y0: &Mat) -> VPoint {
        let n = y0.nrows();
        assert_eq!(n, y0.ncols(), "anchor must be square");
        let mut v = Self::symbolic(n);
        for i in 0..n {
            for j in 0..n {
                let anchor = v.ring.constant(y0[(i, j)].clone());
                v.y[i][j] = anchor.add(&v.ring.even_var(i * n + j));
            }
        }
        v
    }

    pub fn with_c_zero(&self) -> VPoint {
        let mut v = self.clone();
        v.c = vec![vec![self.ring.zero(); self.n]; self.n];
        v
    }

    pub fn with_d_zero(&self) -> VPoint {
        let mut v = self.clone();
        v.d = vec![vec![self.ring.zero(); self.n]; self.n];
        v
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> &GrassmannRing {
        &self.ring
    }
}

/// Image point: the three independent blocks of (q, s; u, qᵗ-like).
#[derive(Clone, Debug)]
pub struct GStarPoint {
    n: usize,
    q: GMat,
    s: GMat,
    u: GMat,
}

impl GStarPoint {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self, i: usize, j: usize) -> &GrassmannPoly {
        &self.q[i][j]
    }

    pub fn s(&self, i: usize, j: usize) -> &GrassmannPoly {
        &self.s[i][j]
    }

    pub fn u(&self, i: usize, j: usize) -> &GrassmannPoly {
        &self.u[i][j]
    }

    /// s skew and u symmetric, entry by entry.
    pub fn shape_ok(&self) -> bool {
        let st = mtranspose(&self.s);
        let skew = self
            .s
            .iter()
            .zip(&st)
            .all(|(r, rt)| r.iter().zip(rt).all(|(a, b)| a.add(b).is_zero()));
        let ut = mtranspose(&self.u);
        let sym = self.u == ut;
        skew && sym
    }
}

/// The resolution map. The lower-right block is determined by the others
/// (its entry shuffle returns q), so only (q, s, u) is kept.
pub fn r_map(v: &VPoint) -> GStarPoint {
    let yt = mtranspose(&v.y);
    let q = msub(&v.y, &mmul(&v.d, &v.c));
    let cy = mmul(&v.c, &v.y);
    let ytc = mmul(&yt, &v.c);
    let cdc = mmul(&mmul(&v.c, &v.d), &v.c);
    let u = msub(&msub(&cy, &ytc), &cdc);
    let p = GStarPoint {
        n: v.n,
        q,
        s: v.d.clone(),
        u,
    };
    assert!(p.shape_ok(), "resolution map produced a malformed point");
    p
}

/// One identity of the rank-two image: its name, the rendered residual
/// after substituting the blocks of the resolution map, and whether the
/// residual is literally zero.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub label: String,
    pub residual: String,
    pub holds: bool,
}

/// The seven identities satisfied by the rank-two image: three mixed
/// equations linear in u, three quadratic ones, and the vanishing of cdc.
///
/// The pairing of diagonal u entries in the mixed equations is forced: at
/// n = 2 one has c = x·(e12 - e21) for a single odd x, so
/// u = cy - yᵗc has entries u11 = 2x·y21, u12 = x·(y22 - y11),
/// u22 = -2x·y12, while q12 = y12 and q21 = y21 up to nilpotents. Hence
/// q12 multiplies u11 and q21 multiplies u22, and the trace-free part of q
/// pairs u11 with q11 - q22.
pub fn check_q_equations_n2(v: &VPoint) -> Result<Vec<IdentityReport>, Error> {
    if v.n != 2 {
        return Err(Error::Unsupported(
            "explicit image equations are only available in rank two".to_string(),
        ));
    }
    let p = r_map(v);
    let two = &Scalar::from_int(2);
    let diff = p.q(0, 0).sub(p.q(1, 1));
    let residuals = vec![
        (
            "q12*u11 + q21*u22",
            p.q(0, 1).mul(p.u(0, 0)).add(&p.q(1, 0).mul(p.u(1, 1))),
        ),
        (
            "2*q21*u12 + (q11 - q22)*u11",
            p.q(1, 0).mul(p.u(0, 1)).scale(two).add(&diff.mul(p.u(0, 0))),
        ),
        (
            "2*q12*u12 + (q22 - q11)*u22",
            p.q(0, 1)
                .mul(p.u(0, 1))
                .scale(two)
                .sub(&diff.mul(p.u(1, 1))),
        ),
        ("u11*u22", p.u(0, 0).mul(p.u(1, 1))),
        ("u12*u11", p.u(0, 1).mul(p.u(0, 0))),
        ("u12*u22", p.u(0, 1).mul(p.u(1, 1))),
    ];
    let mut out: Vec<IdentityReport> = residuals
        .into_iter()
        .map(|(label, r)| IdentityReport {
            label: label.to_string(),
            residual: v.ring.render(&r),
            holds: r.is_zero(),
        })
        .collect();
    let cdc = mmul(&mmul(&v.c, &v.d), &v.c);
    out.push(IdentityReport {
        label: "c*d*c".to_string(),
        residual: format!(
            "[[{}, {}], [{}, {}]]",
            v.ring.render(&cdc[0][0]),
            v.ring.render(&cdc[0][1]),
            v.ring.render(&cdc[1][0]),
            v.ring.render(&cdc[1][1]),
        ),
        holds: mat_is_zero(&cdc),
    });
    Ok(out)
}

/// Dimensions of the two odd stabilizer pieces at the even point with
/// block q: symmetric solutions of q·b = b·qᵗ and skew solutions of
/// c·q = qᵗ·c, computed as exact null spaces.
pub fn stabilizer_dims(q: &Mat) -> (usize, usize) {
    let n = q.nrows();
    assert_eq!(n, q.ncols(), "stabilizer point must be square");
    let qt = q.transpose();

    let sym_basis: Vec<Mat> = {
        let mut basis = Vec::new();
        for i in 0..n {
            for j in i..n {
                let mut b = Mat::zero(n, n);
                b[(i, j)] = Scalar::one();
                b[(j, i)] = Scalar::one();
                basis.push(b);
            }
        }
        basis
    };
    let skew_basis: Vec<Mat> = {
        let mut basis = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let mut c = Mat::zero(n, n);
                c[(i, j)] = Scalar::one();
                c[(j, i)] = -Scalar::one();
                basis.push(c);
            }
        }
        basis
    };

    let system = |images: Vec<Mat>| {
        let mut m = Mat::zero(n * n, images.len());
        for (col, img) in images.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    m[(i * n + j, col)] = img[(i, j)].clone();
                }
            }
        }
        m.nullspace().len()
    };

    let dim_plus = system(
        sym_basis
            .iter()
            .map(|b| {
                let qb = q.matmul(b);
                let bqt = b.matmul(&qt);
                let mut r = Mat::zero(n, n);
                for i in 0..n {
                    for j in 0..n {
                        r[(i, j)] = &qb[(i, j)] - &bqt[(i, j)];
                    }
                }
                r
            })
            .collect(),
    );
    let dim_minus = system(
        skew_basis
            .iter()
            .map(|c| {
                let cq = c.matmul(q);
                let qtc = qt.matmul(c);
                let mut r = Mat::zero(n, n);
                for i in 0..n {
                    for j in 0..n {
                        r[(i, j)] = &cq[(i, j)] - &qtc[(i, j)];
                    }
                }
                r
            })
            .collect(),
    );
    (dim_plus, dim_minus)
}

fn shear_conjugate<R: Rng>(mut m: Mat, rng: &mut R) -> Mat {
    let n = m.nrows();
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            continue;
        }
        let lam = Scalar::from_int(rng.gen_range(-2..=2));
        let mut g = Mat::identity(n);
        let mut g_inv = Mat::identity(n);
        g[(i, j)] = lam.clone();
        g_inv[(i, j)] = -lam;
        m = g.matmul(&m).matmul(&g_inv);
    }
    m
}

/// Random conjugate of a companion matrix. A companion matrix is cyclic
/// (e1 generates under iteration) whatever its last column, so every
/// sample is a regular element.
pub fn sample_regular_matrix<R: Rng>(n: usize, rng: &mut R) -> Mat {
    let mut m = Mat::zero(n, n);
    for j in 0..n - 1 {
        m[(j + 1, j)] = Scalar::one();
    }
    for i in 0..n {
        m[(i, n - 1)] = Scalar::from_int(rng.gen_range(-4..=4));
    }
    shear_conjugate(m, rng)
}

/// Random conjugate of a diagonal matrix with distinct integer entries.
pub fn sample_separable_matrix<R: Rng>(n: usize, rng: &mut R) -> Mat {
    let mut eigen: Vec<i64> = Vec::new();
    while eigen.len() < n {
        let v = rng.gen_range(-6..=6);
        if !eigen.contains(&v) {
            eigen.push(v);
        }
    }
    let mut m = Mat::zero(n, n);
    for (i, v) in eigen.into_iter().enumerate() {
        m[(i, i)] = Scalar::from_int(v);
    }
    shear_conjugate(m, rng)
}

/// Ranks (even, odd) of the differential of the resolution map at
/// (0, 0, y0): the even block is the derivative of q in the deviation of
/// y, the odd block the derivative of (s, u) in the generators of c and d.
pub fn superdifferential_ranks(y0: &Mat) -> (usize, usize) {
    let n = y0.nrows();
    let pairs = n * (n - 1) / 2;
    let v = VPoint::linearized_at(y0);
    let p = r_map(&v);

    let mut even = Mat::zero(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            for col in 0..n * n {
                even[(i * n + j, col)] = p.q(i, j).linear_even_coeff(col);
            }
        }
    }

    let mut odd = Mat::zero(pairs + n * (n + 1) / 2, 2 * pairs);
    let mut row = 0;
    for i in 0..n {
        for j in i + 1..n {
            for col in 0..2 * pairs {
                odd[(row, col)] = p.s(i, j).coeff_of_odd(1u64 << col).constant_term();
            }
            row += 1;
        }
    }
    for i in 0..n {
        for j in i..n {
            for col in 0..2 * pairs {
                odd[(row, col)] = p.u(i, j).coeff_of_odd(1u64 << col).constant_term();
            }
            row += 1;
        }
    }

    (even.rank(), odd.rank())
}

/// Superdimension of the image closure, certified by reaching the maximal
/// differential rank (n², n² - n) at a sampled separable even point. The
/// rank can only drop at special points, so a short resample loop makes a
/// persistent deficiency a genuine failure rather than bad luck.
pub fn superdimension_q(n: usize, seed: u64) -> Result<(usize, usize), Error> {
    let want = (n * n, n * n - n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = (0, 0);
    for _ in 0..5 {
        let y0 = sample_separable_matrix(n, &mut rng);
        last = superdifferential_ranks(&y0);
        if last == want {
            return Ok(want);
        }
    }
    Err(Error::Unsupported(format!(
        "superdifferential rank stuck at ({}, {}), expected ({}, {})",
        last.0, last.1, want.0, want.1
    )))
}

/// The six rank-two image equations as ordinary polynomials in the seven
/// coordinates (q11, q12, q21, q22, u11, u12, u22).
pub fn q_equations_n2() -> Vec<WeightPoly> {
    let var = |i: usize| WeightPoly::var(7, i);
    let (q11, q12, q21, q22) = (var(0), var(1), var(2), var(3));
    let (u11, u12, u22) = (var(4), var(5), var(6));
    let two = &Scalar::from_int(2);
    vec![
        q12.mul(&u11).add(&q21.mul(&u22)),
        q21.mul(&u12).scale(two).add(&q11.sub(&q22).mul(&u11)),
        q12.mul(&u12).scale(two).add(&q22.sub(&q11).mul(&u22)),
        u11.mul(&u22),
        u12.mul(&u11),
        u12.mul(&u22),
    ]
}

/// Rank of the Jacobian of the six image equations at (q, u = 0). The
/// locus where this drops below its generic value 2 detects the singular
/// points of the image: exactly the scalar q.
pub fn q_jacobian_rank_at(q: &Mat) -> usize {
    assert_eq!((q.nrows(), q.ncols()), (2, 2), "rank-two probe");
    let point = [
        q[(0, 0)].clone(),
        q[(0, 1)].clone(),
        q[(1, 0)].clone(),
        q[(1, 1)].clone(),
        Scalar::zero(),
        Scalar::zero(),
        Scalar::zero(),
    ];
    let eqs = q_equations_n2();
    let mut jac = Mat::zero(eqs.len(), 7);
    for (r, f) in eqs.iter().enumerate() {
        for v in 0..7 {
            jac[(r, v)] = f
                .partial(v)
                .eval(&point)
                .expect("seven-variable universe");
        }
    }
    jac.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn madd(a: &GMat, b: &GMat) -> GMat {
        a.iter()
            .zip(b)
            .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x.add(y)).collect())
            .collect()
    }

    #[test]
    fn resolution_map_fixes_the_even_dual_pointwise() {
        for n in [2, 3] {
            let v = VPoint::symbolic(n).with_c_zero().with_d_zero();
            let p = r_map(&v);
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(p.q(i, j), &v.ring.even_var(i * n + j));
                    assert!(p.s(i, j).is_zero());
                    assert!(p.u(i, j).is_zero());
                }
            }
        }
    }

    #[test]
    fn blocks_collapse_when_one_odd_half_is_switched_off() {
        let v = VPoint::symbolic(3);
        let no_c = r_map(&v.with_c_zero());
        for i in 0..3 {
            for j in 0..3 {
                // q = y and u = 0 once c is gone, while s keeps d
                assert_eq!(no_c.q(i, j), &v.y[i][j]);
                assert!(no_c.u(i, j).is_zero());
                assert_eq!(no_c.s(i, j), &v.d[i][j]);
            }
        }
        let no_d = r_map(&v.with_d_zero());
        let yt = mtranspose(&v.y);
        let want_u = msub(&mmul(&v.c, &v.y), &mmul(&yt, &v.c));
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(no_d.u(i, j), &want_u[i][j]);
            }
        }
    }

    #[test]
    fn lower_right_block_is_the_transpose_partner_of_q() {
        for n in [2, 3] {
            let v = VPoint::symbolic(n);
            let p = r_map(&v);
            assert!(p.shape_ok());
            let lower = madd(&mtranspose(&v.y), &mmul(&v.c, &v.d));
            let shuffled = mtranspose(&lower);
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(&shuffled[i][j], p.q(i, j));
                }
            }
        }
    }

    #[test]
    fn rank_two_identities_vanish_on_the_image() {
        let v = VPoint::symbolic(2);
        let reports = check_q_equations_n2(&v).unwrap();
        assert_eq!(reports.len(), 7);
        for rep in &reports {
            assert!(rep.holds, "{} left residual {}", rep.label, rep.residual);
        }
        assert_eq!(reports[0].residual, "0");
        assert!(check_q_equations_n2(&VPoint::symbolic(3)).is_err());
    }

    #[test]
    fn diagonal_pairing_in_the_mixed_identities_is_forced() {
        // Swapping u11 and u22 in the two trace-part identities must break
        // them, otherwise the vanishing test above would be vacuous.
        let v = VPoint::symbolic(2);
        let p = r_map(&v);
        let two = &s(2);
        let diff = p.q(0, 0).sub(p.q(1, 1));
        let swapped = p.q(1, 0).mul(p.u(0, 1)).scale(two).add(&diff.mul(p.u(1, 1)));
        assert!(!swapped.is_zero());
    }

    #[test]
    fn stabilizer_dimensions_at_chosen_even_points() {
        let diag = |entries: &[i64]| {
            let n = entries.len();
            let mut m = Mat::zero(n, n);
            for (i, &v) in entries.iter().enumerate() {
                m[(i, i)] = s(v);
            }
            m
        };
        assert_eq!(stabilizer_dims(&diag(&[1, 2])), (2, 0));
        assert_eq!(stabilizer_dims(&diag(&[1, 1])), (3, 1));
        assert_eq!(stabilizer_dims(&diag(&[1, 1, 2])), (4, 1));
        assert_eq!(stabilizer_dims(&Mat::zero(3, 3)), (6, 3));
    }

    #[test]
    fn regular_samples_have_the_minimal_stabilizer() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for n in [2usize, 3, 4] {
            for _ in 0..20 {
                let q = sample_regular_matrix(n, &mut rng);
                assert_eq!(stabilizer_dims(&q), (n, 0));
                let y = sample_separable_matrix(n, &mut rng);
                assert_eq!(stabilizer_dims(&y), (n, 0));
            }
        }
    }

    #[test]
    fn superdifferential_ranks_generic_and_degenerate() {
        assert_eq!(superdimension_q(2, 5).unwrap(), (4, 2));
        assert_eq!(superdimension_q(3, 5).unwrap(), (9, 6));
        // at y = 0 only the s block survives in the odd directions
        for n in [2usize, 3] {
            let (even, odd) = superdifferential_ranks(&Mat::zero(n, n));
            assert_eq!(even, n * n);
            assert_eq!(odd, n * (n - 1) / 2);
            assert!(odd < n * n - n);
        }
    }

    #[test]
    fn image_jacobian_rank_detects_scalar_points() {
        for a in -2..=2i64 {
            for b in -2..=2i64 {
                for c in -2..=2i64 {
                    for d in -2..=2i64 {
                        let mut q = Mat::zero(2, 2);
                        q[(0, 0)] = s(a);
                        q[(0, 1)] = s(b);
                        q[(1, 0)] = s(c);
                        q[(1, 1)] = s(d);
                        let scalar = b == 0 && c == 0 && a == d;
                        let want = if scalar { 0 } else { 2 };
                        assert_eq!(q_jacobian_rank_at(&q), want);
                    }
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        // The symmetric stabilizer piece is at least n-dimensional at
        // every even point, regular or not.
        #[test]
        fn symmetric_stabilizer_is_at_least_n(
            n in 2usize..=4,
            entries in proptest::collection::vec(-5i64..=5, 16),
        ) {
            let mut q = Mat::zero(n, n);
            for i in 0..n {
                for j in 0..n {
                    q[(i, j)] = s(entries[i * 4 + j]);
                }
            }
            let (plus, _) = stabilizer_dims(&q);
            prop_assert!(plus >= n);
        }
    }
}
