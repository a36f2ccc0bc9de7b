//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

mod common;

use std::error::Error;
use std::time::{Duration, Instant};

use common::oracle::{as_map, oracle_table};
use mxi::comm::{CommElement, CommGrading};
use mxi::fgl::{self, commutator_filtration, fgl_table, inverse_table, orientation_series, verify_axioms};
use mxi::gradebook::{parity_check_ku, rational_mu_series_check, series_free_assoc, splitting_multiplicities};
use mxi::sample::{random_homogeneous, rng, DEFAULT_SEED};
use mxi::steenrod::{self, cartan_extend, GeneratorActionTable, MilnorOp, Verdict};
use mxi::{FreeElement, Nsym, Ring};
use rand::Rng;

type Outcome = Result<String, Box<dyn Error>>;
type Criterion = (&'static str, fn() -> Outcome);

const BUDGET: Duration = Duration::from_secs(60);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+).into());
        }
    };
}

fn complex() -> Nsym {
    Nsym::complex(Ring::Integer)
}

fn parse(alg: &Nsym, s: &str) -> FreeElement {
    alg.parse(s).expect("well-formed literal")
}

fn fgl_coefficients() -> Outcome {
    let alg = complex();
    let start = Instant::now();
    let table = fgl_table(&alg, 8)?;
    let elapsed = start.elapsed();
    ensure!(elapsed < BUDGET, "order 8 took {elapsed:?}");
    let a12 = parse(&alg, "3*Z2 - 2*Z1^2");
    ensure!(table.get(1, 1) == parse(&alg, "2*Z1"), "a[1,1] = {}", table.get(1, 1));
    ensure!(table.get(1, 2) == a12 && table.get(2, 1) == a12, "a[1,2] = {}, a[2,1] = {}", table.get(1, 2), table.get(2, 1));
    let oracle = oracle_table(5);
    for ((i, j), poly) in &oracle {
        ensure!(&as_map(&table.get(*i, *j)) == poly, "a[{i},{j}] differs from the brute-force solve");
    }
    Ok(format!("order 8 in {elapsed:.2?}, {} oracle entries agree", oracle.len()))
}

fn group_law_axioms() -> Outcome {
    let r = verify_axioms(&complex(), 8)?;
    let checks = [("UNIT", &r.unit), ("COMM", &r.comm), ("ASSOC", &r.assoc), ("INVERSE", &r.inverse)];
    let failed: Vec<String> = checks
        .iter()
        .filter(|(_, c)| !c.passed)
        .map(|(name, c)| match &c.first_offending {
            Some(o) => format!("{name} ({} at {:?}: {})", o.identity, o.exponents, o.residual),
            None => name.to_string(),
        })
        .collect();
    ensure!(
        failed.is_empty(),
        "{}; COMM-SWAP {}",
        failed.join(", "),
        if r.comm_swapped.passed { "passes" } else { "fails" }
    );
    Ok("UNIT, COMM, ASSOC, INVERSE pass at order 8".into())
}

fn commutator_bound() -> Outcome {
    let alg = complex();
    let r = commutator_filtration(&alg.z(1), 1, 6)?;
    let lead = r.leading_term();
    let expect = parse(&alg, "Z1*Z2 - Z2*Z1");
    ensure!(lead.as_ref() == Some(&(3, expect.clone())), "leading term {lead:?}, expected x^3 coefficient {expect}");
    let mut rng = rng(DEFAULT_SEED);
    let mut cases = 0;
    for _ in 0..100 {
        let u = random_homogeneous(&alg, 2 * rng.gen_range(1..=4), 4, &mut rng);
        for k in 1..=4 {
            let r = commutator_filtration(&u, k, 12)?;
            ensure!(r.holds(), "u = {u}, k = {k}: valuation {:?}", r.valuation);
            cases += 1;
        }
    }
    Ok(format!("leading term (Z1*Z2 - Z2*Z1) x^3, {cases} random cases at order 12"))
}

fn inverse_series() -> Outcome {
    let alg = complex();
    let inv = inverse_table(&alg, 8)?;
    ensure!(inv.gamma1().to_string() == "-1", "gamma1 = {}", inv.gamma1());
    ensure!(inv.c(1) == parse(&alg, "2*Z1"), "c1 = {}", inv.c(1));
    ensure!(inv.c(2) == parse(&alg, "-4*Z1^2"), "c2 = {}", inv.c(2));
    for k in 1..8 {
        let c = inv.c(k);
        ensure!(c.is_zero() || c.homogeneous_degree() == Some(2 * k), "deg c{k} = {:?}", c.homogeneous_degree());
    }
    let r = fgl::verify_table(&fgl_table(&alg, 8)?)?;
    ensure!(r.inverse.passed, "inverse identity: {:?}", r.inverse.first_offending);
    Ok("gamma1 = -1, c1 = 2*Z1, c2 = -4*Z1^2, both identities vanish to order 8".into())
}

fn steenrod_values() -> Outcome {
    for p in [3u64, 5] {
        let (f, g) = steenrod::brown_peterson(p)?;
        let t = |r| CommElement::generator(f, &g, r);
        let p1 = MilnorOp::new(p, 1)?;
        let pp = MilnorOp::new(p, p as u32)?;
        ensure!(steenrod::right_action(&t(1), &p1)? == t(1).one_like().neg(), "P^1 t1 at p = {p}");
        ensure!(steenrod::right_action(&t(2), &p1)? == t(1).pow(p).neg(), "P^1 t2 at p = {p}");
        ensure!(steenrod::right_action(&t(2), &pp)?.is_zero(), "P^p t2 at p = {p}");

        let wg = CommGrading::custom("w", vec![2 * (p as u32 - 1)]);
        let w = CommElement::generator(f, &wg, 1);
        let mut table = GeneratorActionTable::new(p);
        table.insert(1, 1, w.one_like().neg());
        let v = w.pow(p + 1);
        ensure!(cartan_extend(&table, &v, &p1)? == w.pow(p).neg(), "P^1 w^(p+1) at p = {p}");
        ensure!(cartan_extend(&table, &v, &pp)? == w.neg(), "P^p w^(p+1) at p = {p}");
    }
    let (f, g) = steenrod::dual_steenrod(2)?;
    let xi = |r| CommElement::generator(f, &g, r);
    let sq = |k| MilnorOp::new(2, k);
    ensure!(steenrod::right_action(&xi(1), &sq(1)?)? == xi(1).one_like(), "Sq^1 xi1");
    ensure!(steenrod::right_action(&xi(2), &sq(2)?)? == xi(1), "Sq^2 xi2");
    ensure!(steenrod::right_action(&xi(2), &sq(1)?)?.is_zero(), "Sq^1 xi2");
    let alg = Nsym::real(Ring::PrimeField(2));
    ensure!(steenrod::nsym_action(&sq(1)?, &alg.z(1).pow(3))? == alg.z(1).pow(2), "Sq^1 z1^3");
    Ok("BP at p = 3, 5, dual Steenrod at p = 2, symbolic w, z1^3".into())
}

fn certificates() -> Outcome {
    let start = Instant::now();
    let bp = steenrod::bp_obstruction_certificate(3)?;
    let elapsed = start.elapsed();
    ensure!(elapsed < BUDGET, "bp certificate took {elapsed:?}");
    ensure!(bp.verdict == Verdict::Infeasible, "bp certificate is {:?}", bp.verdict);
    let big = bp.largest_system().ok_or("no systems recorded")?;
    ensure!(big.dimension == 128 && big.degree == 16, "largest system {big:?}");

    let hf2 = steenrod::hf2_obstruction_certificate()?;
    ensure!(hf2.verdict == Verdict::Infeasible, "hf2 certificate is {:?}", hf2.verdict);
    let c = hf2.centralizers.iter().find(|c| c.candidate == "z1" && c.degree == 3).ok_or("no centralizer of z1 in degree 3")?;
    ensure!(c.basis == ["z1^3"], "centralizer basis {:?}", c.basis);
    Ok(format!("bp(3) INFEASIBLE in {elapsed:.2?} (largest system {} in degree 16), hf2 INFEASIBLE", big.dimension))
}

fn gradebook() -> Outcome {
    let nsym = series_free_assoc(&[2, 4, 6, 8], 8)?;
    ensure!(nsym.dims() == [1, 0, 1, 0, 2, 0, 4, 0, 8], "NSym dims {nsym}");
    let split = splitting_multiplicities(2, 80)?;
    let even: Vec<i64> = (0..=12).step_by(2).map(|d| split.get(d)).collect();
    ensure!(even == [1, 0, 1, 1, 4, 7, 14], "splitting {even:?}");
    ensure!(split.is_nonnegative(), "negative multiplicity through 80");
    let parity = parity_check_ku(2, 10)?;
    ensure!(parity.least_odd_ku_degree == Some(9) && parity.cp_side_even_only, "parity {parity:?}");
    ensure!(rational_mu_series_check(40)?.matches, "partition counts differ");
    Ok("dims, splitting, parity at p = 2, partitions through 40".into())
}

fn property_suites() -> Outcome {
    let alg = complex();
    let mut runs = 0;
    for seed in 0..20 {
        common::left_expand_round_trip(&alg, seed, 5)?;
        common::specialize_multiplicative(&alg, seed, 4)?;
        common::revert_random(&alg, seed, 8)?;
        common::division_round_trip(seed, 40)?;
        runs += 4;
    }
    for a in [complex(), Nsym::real(Ring::Integer)] {
        common::revert_two_sided(&orientation_series(&a, 8)?)?;
    }
    for p in [2, 3] {
        common::hopf_laws(p)?;
    }
    for p in [2, 3, 5, 7] {
        common::lucas_agrees(p, 200)?;
    }
    common::action_matches_cartan(3, DEFAULT_SEED, 100)?;
    Ok(format!("{} seeded instances, Hopf laws, Lucas to 200, Cartan on 100 monomials", runs + 2))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("group law coefficients", fgl_coefficients),
        ("group law axioms", group_law_axioms),
        ("commutator filtration", commutator_bound),
        ("inverse series", inverse_series),
        ("Steenrod values", steenrod_values),
        ("obstruction certificates", certificates),
        ("gradebook", gradebook),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS  {detail} [{t:.2?}]", n + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {} {name}: FAIL  {e} [{t:.2?}]", n + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
