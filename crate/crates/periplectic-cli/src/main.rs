//! Batch driver for the periplectic library: one subcommand per family of
//! verifications, with deterministic text or JSON output suitable for
//! golden-file comparison. Exit code 0 means every requested check passed,
//! 1 means at least one failed, 2 means the invocation itself was invalid.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::rc::Rc;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use periplectic::center::CenterBuilder;
use periplectic::chars::{
    char_by_basis_enumeration, char_even_verma, char_thick_product, char_thick_sum, char_verma,
    KostantOracle,
};
use periplectic::geometry::{
    check_q_equations_n2, q_jacobian_rank_at, sample_regular_matrix, stabilizer_dims,
    superdifferential_ranks, superdimension_q, VPoint,
};
use periplectic::linalg::Mat;
use periplectic::roots::{
    delta_eval, delta_poly, dot_action_poly, is_typical, odd_minus_roots, odd_plus_roots,
    permutations, positive_even_roots, restrict_to_wall, rho0, theta_eval, theta_poly,
    theta_poly_at,
};
use periplectic::superalg::{lincomb_insert, Algebra, BasisElem, LinComb};
use periplectic::uea::{Elem, PbwOrder, Uea};
use periplectic::verma::{lowering_odd_word, raising_odd_word, VermaModule};
use periplectic::{Scalar, WeightPoly};

#[derive(Parser)]
#[command(
    name = "periplectic",
    version,
    about = "Exact computations in the enveloping algebra, modules, and coadjoint geometry of p(n)"
)]
struct Cli {
    /// Output format: human-readable text or a single JSON document.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Cmd {
    /// Root data of p(n), plus bracket and straightening self-checks.
    Roots {
        #[arg(long)]
        n: usize,
        /// Verify the super-Jacobi identity and straightening confluence.
        #[arg(long)]
        check: bool,
        /// Number of random words for the confluence check.
        #[arg(long, default_value_t = 1000)]
        words: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// The Verma eigenvalue polynomial Δ, printed or evaluated.
    Delta {
        #[arg(long)]
        n: usize,
        /// "symbolic" or a comma-separated list of rationals like 3,1/2,0.
        #[arg(long, default_value = "symbolic")]
        mu: String,
    },
    /// The typicality polynomial Θ: values, dot-action invariance, walls.
    Theta {
        #[arg(long)]
        n: usize,
        /// "symbolic" or a comma-separated list of rationals.
        #[arg(long, default_value = "symbolic")]
        mu: String,
    },
    /// Highest-weight module checks: the XY eigenvalue identity, the
    /// grade-zero return, and the singular vectors on the equal-tail locus.
    VermaCheck {
        #[arg(long)]
        n: usize,
        /// "symbolic" or a comma-separated list of rationals.
        #[arg(long, default_value = "symbolic")]
        mu: String,
    },
    /// Build the invariant transfer element and its odd lowering; report
    /// the proportionality constant and verify how it acts.
    Central {
        #[arg(long)]
        n: usize,
        /// Evaluate the action at one numeric weight instead of sampling.
        #[arg(long)]
        mu: Option<String>,
        /// Number of sampled weights for the action check when n > 2.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Character identities on a finite window below the highest weight.
    Char {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        depth: i64,
    },
    /// Coadjoint geometry: stabilizer dimensions, the rank-two image
    /// equations, and the superdifferential rank of the resolution map.
    Geometry {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = GeomCheck::All)]
        check: GeomCheck,
        /// Number of random regular points for the stabilizer check.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GeomCheck {
    QEquations,
    Stabilizer,
    Superdimension,
    All,
}

#[derive(Serialize)]
struct Check {
    name: String,
    status: &'static str,
    detail: String,
}

#[derive(Serialize)]
struct Report {
    schema_version: u32,
    subcommand: &'static str,
    parameters: BTreeMap<String, String>,
    values: BTreeMap<String, String>,
    checks: Vec<Check>,
    ok: bool,
}

impl Report {
    fn new(subcommand: &'static str) -> Self {
        Report {
            schema_version: 1,
            subcommand,
            parameters: BTreeMap::new(),
            values: BTreeMap::new(),
            checks: Vec::new(),
            ok: true,
        }
    }

    fn param(&mut self, key: &str, value: impl ToString) {
        self.parameters.insert(key.to_string(), value.to_string());
    }

    fn value(&mut self, key: &str, value: impl ToString) {
        self.values.insert(key.to_string(), value.to_string());
    }

    fn check(&mut self, name: &str, pass: bool, detail: impl ToString) {
        if !pass {
            self.ok = false;
        }
        self.checks.push(Check {
            name: name.to_string(),
            status: if pass { "pass" } else { "fail" },
            detail: detail.to_string(),
        });
    }
}

fn emit(report: &Report, format: Format) {
    match format {
        Format::Structured => {
            println!(
                "{}",
                serde_json::to_string_pretty(report).expect("report serializes")
            );
        }
        Format::Text => {
            println!("subcommand: {}", report.subcommand);
            for (k, v) in &report.parameters {
                println!("  {k} = {v}");
            }
            if !report.values.is_empty() {
                println!("values:");
                for (k, v) in &report.values {
                    println!("  {k} = {v}");
                }
            }
            for c in &report.checks {
                let badge = if c.status == "pass" { "PASS" } else { "FAIL" };
                if c.detail.is_empty() {
                    println!("[{badge}] {}", c.name);
                } else {
                    println!("[{badge}] {} ({})", c.name, c.detail);
                }
            }
            println!("result: {}", if report.ok { "PASS" } else { "FAIL" });
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.cmd) {
        Ok(report) => {
            emit(&report, cli.format);
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: &Cmd) -> Result<Report, String> {
    match cmd {
        Cmd::Roots {
            n,
            check,
            words,
            seed,
        } => run_roots(*n, *check, *words, *seed),
        Cmd::Delta { n, mu } => run_delta(*n, mu),
        Cmd::Theta { n, mu } => run_theta(*n, mu),
        Cmd::VermaCheck { n, mu } => run_verma_check(*n, mu),
        Cmd::Central {
            n,
            mu,
            samples,
            seed,
        } => run_central(*n, mu.as_deref(), *samples, *seed),
        Cmd::Char { n, depth } => run_char(*n, *depth),
        Cmd::Geometry {
            n,
            check,
            samples,
            seed,
        } => run_geometry(*n, *check, *samples, *seed),
    }
}

enum MuSpec {
    Symbolic,
    Numeric(Vec<Scalar>),
}

fn parse_mu(raw: &str, n: usize) -> Result<MuSpec, String> {
    if raw == "symbolic" {
        return Ok(MuSpec::Symbolic);
    }
    let parts: Result<Vec<Scalar>, _> = raw.split(',').map(|p| p.trim().parse()).collect();
    let vals = parts.map_err(|e| format!("cannot parse weight '{raw}': {e}"))?;
    if vals.len() != n {
        return Err(format!(
            "weight '{raw}' has {} coordinates but the rank is {n}",
            vals.len()
        ));
    }
    Ok(MuSpec::Numeric(vals))
}

fn algebra(n: usize) -> Result<Rc<Algebra>, String> {
    Algebra::new(n).map(Rc::new).map_err(|e| e.to_string())
}

fn fmt_scalars(vals: &[Scalar]) -> String {
    let parts: Vec<String> = vals.iter().map(|v| v.to_string()).collect();
    parts.join(", ")
}

fn fmt_roots(roots: &[Vec<i64>]) -> String {
    let parts: Vec<String> = roots
        .iter()
        .map(|r| {
            let coords: Vec<String> = r.iter().map(|v| v.to_string()).collect();
            format!("({})", coords.join(", "))
        })
        .collect();
    parts.join(" ")
}

fn super_jacobi_holds(alg: &Algebra) -> bool {
    let single = |x: BasisElem| LinComb::from([(x, Scalar::one())]);
    for &x in alg.basis() {
        for &y in alg.basis() {
            for &z in alg.basis() {
                let lhs = alg.bracket_comb(&single(x), alg.bracket(y, z));
                let mut rhs = alg.bracket_comb(alg.bracket(x, y), &single(z));
                let y_xz = alg.bracket_comb(&single(y), alg.bracket(x, z));
                let flip = x.parity().swap_is_negative(y.parity());
                for (k, v) in y_xz {
                    lincomb_insert(&mut rhs, k, if flip { -v } else { v });
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

fn confluence_holds(alg: &Rc<Algebra>, words: usize, seed: u64) -> bool {
    let engines = [
        Uea::new(alg.clone(), PbwOrder::ByGrade),
        Uea::new(alg.clone(), PbwOrder::ByTriangular),
    ];
    let basis = alg.basis().to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..words {
        let len = rng.gen_range(1..=4);
        let word: Vec<BasisElem> = (0..len)
            .map(|_| basis[rng.gen_range(0..basis.len())])
            .collect();
        for engine in &engines {
            if engine.product_of(&word) != engine.slow_normal_form(&word, &mut rng) {
                return false;
            }
        }
    }
    true
}

fn run_roots(n: usize, check: bool, words: usize, seed: u64) -> Result<Report, String> {
    let alg = algebra(n)?;
    let mut rep = Report::new("roots");
    rep.param("n", n);
    rep.param("check", check);
    if check {
        rep.param("words", words);
        rep.param("seed", seed);
    }
    rep.value("dim", alg.dim());
    rep.value("rho0", fmt_scalars(&rho0(n)));
    rep.value("positive_even_roots", fmt_roots(&positive_even_roots(n)));
    rep.value("odd_plus_roots", fmt_roots(&odd_plus_roots(n)));
    rep.value("odd_minus_roots", fmt_roots(&odd_minus_roots(n)));
    if check {
        let triples = alg.dim().pow(3);
        rep.check(
            "super-Jacobi identity on all basis triples",
            super_jacobi_holds(&alg),
            format!("{triples} triples"),
        );
        rep.check(
            "straightening confluence against the randomized normalizer",
            confluence_holds(&alg, words, seed),
            format!("{words} words of degree <= 4, both monomial orders"),
        );
    }
    Ok(rep)
}

fn run_delta(n: usize, mu_raw: &str) -> Result<Report, String> {
    if n < 2 {
        return Err("rank must be at least 2".to_string());
    }
    let mut rep = Report::new("delta");
    rep.param("n", n);
    rep.param("mu", mu_raw);
    match parse_mu(mu_raw, n)? {
        MuSpec::Symbolic => {
            let p = delta_poly(n);
            rep.value("delta", &p);
            let mut ok = true;
            for k in 0..5i64 {
                let point: Vec<Scalar> =
                    (0..n).map(|i| Scalar::from_int(k + 2 * i as i64)).collect();
                let lhs = p.eval(&point).expect("full point");
                if lhs != delta_eval(&point) {
                    ok = false;
                }
            }
            rep.check(
                "expanded polynomial matches the factored product",
                ok,
                "5 probe points",
            );
        }
        MuSpec::Numeric(mu) => {
            let value = delta_eval(&mu);
            rep.value("delta", &value);
            let via_poly = delta_poly(n).eval(&mu).expect("full point");
            rep.check(
                "direct product agrees with the expanded polynomial",
                via_poly == value,
                "",
            );
        }
    }
    Ok(rep)
}

fn run_theta(n: usize, mu_raw: &str) -> Result<Report, String> {
    if n < 2 {
        return Err("rank must be at least 2".to_string());
    }
    let mut rep = Report::new("theta");
    rep.param("n", n);
    rep.param("mu", mu_raw);
    match parse_mu(mu_raw, n)? {
        MuSpec::Symbolic => {
            let theta = theta_poly(n);
            if n <= 3 {
                rep.value("theta", &theta);
            } else {
                rep.value("theta_terms", theta.terms().count());
            }
            let vars: Vec<WeightPoly> = (0..n).map(|i| WeightPoly::var(n, i)).collect();
            let invariant = permutations(n)
                .iter()
                .all(|w| theta_poly_at(&dot_action_poly(w, &vars)) == theta);
            rep.check(
                "invariance under the shifted action of every permutation",
                invariant,
                format!("{} permutations", permutations(n).len()),
            );
            let mut walls = true;
            for i in 0..n {
                for j in 0..n {
                    if i != j && !restrict_to_wall(&theta, i, j).is_zero() {
                        walls = false;
                    }
                }
            }
            rep.check(
                "vanishing on every atypicality wall",
                walls,
                format!("{} walls", n * (n - 1)),
            );
        }
        MuSpec::Numeric(mu) => {
            let value = theta_eval(&mu);
            rep.value("theta", &value);
            rep.value(
                "typicality",
                if is_typical(&mu) { "typical" } else { "atypical" },
            );
            let via_poly = theta_poly(n).eval(&mu).expect("full point");
            rep.check(
                "direct product agrees with the expanded polynomial",
                via_poly == value,
                "",
            );
        }
    }
    Ok(rep)
}

fn run_verma_check(n: usize, mu_raw: &str) -> Result<Report, String> {
    let alg = algebra(n)?;
    let mut rep = Report::new("verma-check");
    rep.param("n", n);
    rep.param("mu", mu_raw);

    let module = match parse_mu(mu_raw, n)? {
        MuSpec::Symbolic => VermaModule::symbolic(alg.clone()),
        MuSpec::Numeric(mu) => {
            VermaModule::numeric(alg.clone(), &mu).map_err(|e| e.to_string())?
        }
    };
    let delta = delta_poly(n)
        .eval_poly(module.mu())
        .expect("weight matches rank");
    rep.value("delta", &delta);

    let v = module.highest();
    let y_word = lowering_odd_word(n);
    let x_word = raising_odd_word(n);
    let yv = module.act_word(&y_word, &v);
    let xyv = module.act_word(&x_word, &yv);
    rep.check(
        "raising the fully lowered vector returns the eigenvalue",
        xyv == v.scale(&delta),
        "XYv = Delta(mu) v",
    );

    // The projection onto the even enveloping subalgebra is taken in the
    // graded order, where every impure monomial keeps a lowering factor on
    // the right and therefore dies on the fully lowered vector.
    let graded = Uea::new(alg.clone(), PbwOrder::ByGrade);
    let y_el = graded.product_of(&y_word);
    let x_el = graded.product_of(&x_word);
    let yx0 = graded.even_part(&graded.mul(&y_el, &x_el));
    rep.check(
        "even part of YX is nonzero",
        !yx0.is_zero(),
        format!("{} terms", yx0.num_terms()),
    );
    rep.check(
        "even part of YX acts on Yv by the same eigenvalue",
        module.act(&yx0, &yv) == yv.scale(&delta),
        "(YX)0 Yv = Delta(mu) Yv",
    );

    // Singular vectors exist exactly when the last two weight coordinates
    // agree, so these checks run on that constrained symbolic family.
    let fam = VermaModule::symbolic_tail_equal(alg.clone());
    let u = fam.act_gen(BasisElem::e(n - 1, n - 2), &fam.highest());
    rep.check(
        "lower even vector is singular on the equal-tail family",
        fam.is_singular(&u),
        "",
    );
    let w = fam.act_gen(BasisElem::c(n - 2, n - 1), &fam.highest());
    let into_line = fam
        .raising_generators()
        .into_iter()
        .all(|g| fam.act_gen(g, &w).is_multiple_of_monomial(&u));
    rep.check(
        "raising the skew-odd vector lands in the singular line",
        into_line,
        "",
    );
    let bw = fam.act_gen(BasisElem::b(n - 1, n - 1), &w);
    rep.check(
        "the last symmetric-odd generator sends it to minus the singular vector",
        bw == u.neg(),
        "",
    );
    Ok(rep)
}

fn run_central(n: usize, mu_raw: Option<&str>, samples: usize, seed: u64) -> Result<Report, String> {
    let alg = algebra(n)?;
    let mut rep = Report::new("central");
    rep.param("n", n);
    if let Some(raw) = mu_raw {
        rep.param("mu", raw);
    } else {
        rep.param("samples", samples);
        rep.param("seed", seed);
    }

    let builder = CenterBuilder::new(alg.clone());
    let t = builder.t().map_err(|e| e.to_string())?;
    let s = builder.s().map_err(|e| e.to_string())?;
    rep.value("t_terms", t.num_terms());
    rep.value("s_terms", s.num_terms());
    if n == 2 {
        rep.value("t", t.render());
        rep.value("s", s.render());
    }

    let kappa = match builder.kappa() {
        Ok(k) => {
            rep.value("kappa", &k);
            rep.check(
                "highest symbol of the lowered element is proportional to the typicality polynomial",
                true,
                format!("kappa = {k}"),
            );
            k
        }
        Err(e) => {
            rep.check(
                "highest symbol of the lowered element is proportional to the typicality polynomial",
                false,
                e.to_string(),
            );
            return Ok(rep);
        }
    };

    let engine = builder.engine();
    let mut equivariant = true;
    for i in 0..n {
        for j in 0..n {
            let want = if i == j {
                t.scale(&Scalar::from_int(n as i64 - 1))
            } else {
                Elem::zero()
            };
            if engine.ad(BasisElem::e(i, j), &t) != want {
                equivariant = false;
            }
        }
    }
    rep.check(
        "transfer element is semi-invariant under the even subalgebra",
        equivariant,
        "ad by E(i,j) gives delta_ij (n-1) T",
    );

    match mu_raw {
        Some(raw) => {
            let mu = match parse_mu(raw, n)? {
                MuSpec::Numeric(mu) => mu,
                MuSpec::Symbolic => {
                    return Err("central --mu expects a numeric weight".to_string())
                }
            };
            let module =
                VermaModule::numeric(alg.clone(), &mu).map_err(|e| e.to_string())?;
            let scalar = &kappa * &theta_eval(&mu);
            let got = module.act(&s, &module.highest());
            let want = module
                .highest()
                .scale(&WeightPoly::constant(0, scalar.clone()));
            rep.value("s_eigenvalue", &scalar);
            rep.check(
                "lowered element acts on the highest vector by kappa * Theta(mu)",
                got == want,
                format!("value {scalar}"),
            );
        }
        None if n == 2 => {
            let module = VermaModule::symbolic(alg.clone());
            let got = module.act(&s, &module.highest());
            let want = module.highest().scale(&theta_poly(n).scale(&kappa));
            rep.check(
                "lowered element acts on the highest vector by kappa * Theta, symbolically",
                got == want,
                "polynomial identity in mu",
            );
            for k in [1usize, 2] {
                let z = builder.gelfand(k);
                let s_z = builder.s_with(&z).map_err(|e| e.to_string())?;
                let hz = builder.eigenvalue_polynomial(&z);
                let via_action = module.act(&s_z, &module.highest());
                let expected = module.act(&s, &module.highest()).scale(&hz);
                rep.check(
                    &format!("Gelfand lift of order {k} multiplies the action by its symbol"),
                    via_action == expected,
                    format!("h(z) = {hz}"),
                );
            }
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut all = true;
            for _ in 0..samples {
                let mu: Vec<Scalar> = (0..n)
                    .map(|_| Scalar::new(rng.gen_range(-9..=9), rng.gen_range(1..=3)))
                    .collect();
                let module =
                    VermaModule::numeric(alg.clone(), &mu).map_err(|e| e.to_string())?;
                let scalar = &kappa * &theta_eval(&mu);
                let got = module.act(&s, &module.highest());
                let want = module.highest().scale(&WeightPoly::constant(0, scalar));
                if got != want {
                    all = false;
                }
            }
            rep.check(
                "lowered element acts by kappa * Theta(mu) at sampled rational weights",
                all,
                format!("{samples} weights, one constant kappa = {kappa}"),
            );
        }
    }
    Ok(rep)
}

fn run_char(n: usize, depth: i64) -> Result<Report, String> {
    if n < 2 {
        return Err("rank must be at least 2".to_string());
    }
    if depth < 0 {
        return Err("depth must be nonnegative".to_string());
    }
    let mut rep = Report::new("char");
    rep.param("n", n);
    rep.param("depth", depth);

    let ch = char_verma(n, depth);
    rep.value("verma_terms", ch.num_terms());
    rep.check(
        "product formula matches the direct basis enumeration",
        ch == char_by_basis_enumeration(n, depth),
        format!("window depth {depth}"),
    );

    let even = char_even_verma(n, depth);
    let oracle = KostantOracle::new(n);
    let kostant_ok = even.terms().all(|(r, &m)| {
        let beta: Vec<i64> = r.iter().map(|v| -v).collect();
        oracle.count(&beta) == m
    });
    rep.check(
        "even multiplicities are partition counts",
        kostant_ok,
        format!("{} window offsets", even.num_terms()),
    );

    let product = char_thick_product(n, depth);
    let sum = char_thick_sum(n, depth);
    rep.value("thick_terms", product.num_terms());
    rep.check(
        "thick character: raising product equals the subset sum",
        product == sum,
        format!("{} subsets", 1u64 << odd_plus_roots(n).len()),
    );
    Ok(rep)
}

fn repeated_eigenvalue_point(n: usize) -> Mat {
    let mut q = Mat::zero(n, n);
    for i in 0..n {
        // first two diagonal entries agree, the rest stay distinct
        let v = if i == 0 { 1 } else { i as i64 };
        q[(i, i)] = Scalar::from_int(v);
    }
    q
}

fn run_geometry(n: usize, which: GeomCheck, samples: usize, seed: u64) -> Result<Report, String> {
    if n < 2 {
        return Err("rank must be at least 2".to_string());
    }
    let mut rep = Report::new("geometry");
    rep.param("n", n);
    rep.param(
        "check",
        match which {
            GeomCheck::QEquations => "q-equations",
            GeomCheck::Stabilizer => "stabilizer",
            GeomCheck::Superdimension => "superdimension",
            GeomCheck::All => "all",
        },
    );

    let want_q_eq = matches!(which, GeomCheck::QEquations | GeomCheck::All);
    let want_stab = matches!(which, GeomCheck::Stabilizer | GeomCheck::All);
    let want_sdim = matches!(which, GeomCheck::Superdimension | GeomCheck::All);

    if matches!(which, GeomCheck::QEquations) && n != 2 {
        return Err("the explicit image equations require --n 2".to_string());
    }
    if matches!(which, GeomCheck::Superdimension) && n > 3 {
        return Err("the superdifferential check supports --n 2 or 3".to_string());
    }

    if want_q_eq && n == 2 {
        let v = VPoint::symbolic(2);
        for identity in check_q_equations_n2(&v).map_err(|e| e.to_string())? {
            rep.check(
                &format!("identity {}", identity.label),
                identity.holds,
                format!("residual {}", identity.residual),
            );
        }
        let mut grid_ok = true;
        let mut points = 0u32;
        for a in -2..=2i64 {
            for b in -2..=2i64 {
                for c in -2..=2i64 {
                    for d in -2..=2i64 {
                        let mut q = Mat::zero(2, 2);
                        q[(0, 0)] = Scalar::from_int(a);
                        q[(0, 1)] = Scalar::from_int(b);
                        q[(1, 0)] = Scalar::from_int(c);
                        q[(1, 1)] = Scalar::from_int(d);
                        let scalar = b == 0 && c == 0 && a == d;
                        let want = if scalar { 0 } else { 2 };
                        if q_jacobian_rank_at(&q) != want {
                            grid_ok = false;
                        }
                        points += 1;
                    }
                }
            }
        }
        rep.check(
            "image Jacobian rank drops exactly at scalar points",
            grid_ok,
            format!("{points} grid points"),
        );
    }

    if want_stab {
        rep.param("samples", samples);
        rep.param("seed", seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut regular_ok = true;
        for _ in 0..samples {
            if stabilizer_dims(&sample_regular_matrix(n, &mut rng)) != (n, 0) {
                regular_ok = false;
            }
        }
        rep.check(
            "regular points have stabilizer dimensions (n, 0)",
            regular_ok,
            format!("{samples} sampled regular points"),
        );
        let rep_point = repeated_eigenvalue_point(n);
        let dims = stabilizer_dims(&rep_point);
        rep.value("repeated_eigenvalue_dims", format!("({}, {})", dims.0, dims.1));
        rep.check(
            "a repeated eigenvalue strictly enlarges both stabilizer pieces",
            dims.0 > n && dims.1 > 0,
            format!("dims ({}, {})", dims.0, dims.1),
        );
        let zero_dims = stabilizer_dims(&Mat::zero(n, n));
        rep.check(
            "the zero point has the full odd stabilizer",
            zero_dims == (n * (n + 1) / 2, n * (n - 1) / 2),
            format!("dims ({}, {})", zero_dims.0, zero_dims.1),
        );
    }

    if want_sdim && n <= 3 {
        match superdimension_q(n, seed) {
            Ok((even, odd)) => {
                rep.value("superdimension", format!("({even}, {odd})"));
                rep.check(
                    "superdifferential reaches rank (n^2, n^2 - n) at a generic point",
                    (even, odd) == (n * n, n * n - n),
                    format!("ranks ({even}, {odd})"),
                );
            }
            Err(e) => {
                rep.check(
                    "superdifferential reaches rank (n^2, n^2 - n) at a generic point",
                    false,
                    e.to_string(),
                );
            }
        }
        let (even0, odd0) = superdifferential_ranks(&Mat::zero(n, n));
        rep.check(
            "odd rank collapses at the degenerate even point",
            even0 == n * n && odd0 == n * (n - 1) / 2,
            format!("ranks ({even0}, {odd0}) at y = 0"),
        );
    }
    Ok(rep)
}
