//! Acceptance criteria, one line each. Exits nonzero when any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use injsupp::complexes::{contractibility_verdict, ComplexShape, ContractVerdict};
use injsupp::exactnum::{hermite_normal_form, invariant_factors, smith_normal_form, IntMatrix, Lattice};
use injsupp::modules::{ass_fg, DualComplex, DualTarget, Element, FgModule, ModuleDesc, RMatrix};
use injsupp::oracle::minors::{determinant, determinantal_divisors, invariant_factors_by_minors};
use injsupp::oracle::{
    brute_ass, brute_essential, dual_window, brute_hom, brute_homology, brute_homotopy, brute_socle, brute_tensor, Elt, FiniteComplex,
    FiniteMap, FiniteModule,
};
use injsupp::ring::{Ideal, PrimeIdeal};
use injsupp::support::{check_prop21_equivalence, free_resolution};
use injsupp_verify::corpus::equivalence_corpus;
use injsupp_verify::{run_scenario, Report, Scenario, ScenarioName};

const PROP_MAIN_PRIMES: [u64; 3] = [2, 3, 5];
const PROP_MAIN_SECONDS: f64 = 30.0;
const FOXBY_PRIMES: [u64; 4] = [2, 3, 5, 7];
const CORPUS_MIN: usize = 20;
const MAXIMAL_PRIMES: [u64; 5] = [2, 3, 5, 7, 11];
const ORACLE_PRIMES: [u64; 2] = [2, 3];
const ORACLE_PAIRS_MIN: usize = 30;
const MATRICES: usize = 500;
const MATRIX_DIM: usize = 6;
const ENTRY_BOUND: i64 = 20;
const SEED: u64 = 20;

type Verdict = Result<String, String>;

fn scenario(name: ScenarioName, p: u64) -> Scenario {
    Scenario { name, prime: p, window: (-6, 6), torsion_bound: 12, samples: 200, seed: SEED }
}

fn run_all_pass(name: ScenarioName, primes: &[u64]) -> Result<Vec<Report>, String> {
    let mut out = Vec::new();
    for &p in primes {
        let r = run_scenario(&scenario(name, p)).map_err(|e| e.to_string())?;
        if let Some(c) = r.failures().next() {
            return Err(format!("{name} p={p}: {} failed: {}", c.name, c.witness.as_deref().unwrap_or("")));
        }
        out.push(r);
    }
    Ok(out)
}

fn prop_main() -> Verdict {
    let t = Instant::now();
    let reports = run_all_pass(ScenarioName::PropMain, &PROP_MAIN_PRIMES)?;
    let secs = t.elapsed().as_secs_f64();
    let required = [
        "prop-main.minimal.essential",
        "prop-main.minimal.socle",
        "prop-main.quasi-iso",
        "prop-main.support",
        "prop-main.ass-strict",
        "prop-main.localized.acyclic",
        "prop-main.localized.nonzero",
        "prop-main.localized.not-contractible",
    ];
    for r in &reports {
        for name in required {
            if !r.checks.iter().any(|c| c.name == name && c.status == injsupp_verify::Status::Pass) {
                return Err(format!("p={}: {name} missing", r.prime));
            }
        }
    }
    if secs >= PROP_MAIN_SECONDS {
        return Err(format!("all checks pass but took {secs:.1}s (limit {PROP_MAIN_SECONDS}s)"));
    }
    Ok(format!("p in {PROP_MAIN_PRIMES:?}, {} checks each, {secs:.1}s", reports[0].checks.len()))
}

fn foxby() -> Verdict {
    let reports = run_all_pass(ScenarioName::FoxbyBoundedBelow, &FOXBY_PRIMES)?;
    let w: Vec<String> = reports
        .iter()
        .filter_map(|r| r.checks.iter().find(|c| c.name == "foxby.equality")?.witness.clone())
        .collect();
    Ok(w.join("; "))
}

fn equivalence() -> Verdict {
    let corpus = equivalence_corpus().map_err(|e| e.to_string())?;
    if corpus.len() < CORPUS_MIN {
        return Err(format!("corpus has {} objects", corpus.len()));
    }
    let mut pairs = 0;
    for entry in &corpus {
        for q in MAXIMAL_PRIMES {
            let r = check_prop21_equivalence(&entry.object, entry.model.as_ref(), PrimeIdeal::MaximalAt(q), (-6, 6))
                .map_err(|e| format!("{} at ({q},x): {e}", entry.name))?;
            if !r.agree() {
                return Err(format!("{}: {r}", entry.name));
            }
            pairs += 1;
        }
    }
    Ok(format!("{} objects x {} primes = {pairs} pairs, 0 disagreements", corpus.len(), MAXIMAL_PRIMES.len()))
}

fn injective_facts() -> Verdict {
    let reports = run_all_pass(ScenarioName::RemarkIhulls, &[2, 3])?;
    let names: Vec<&str> = reports[0].checks.iter().map(|c| c.name.as_str()).collect();
    Ok(format!("p in [2, 3]: {}", names.join(", ")))
}

// finite analogues

fn fg_modules(p: i64) -> Vec<(String, FgModule)> {
    let c = |gens: &[(i64, i64)]| FgModule::cyclic(&Ideal::int(gens)).expect("ideal");
    vec![
        (format!("R/({p},x)"), c(&[(p, 0), (0, 1)])),
        (format!("R/({p})"), c(&[(p, 0)])),
        (format!("R/({},x)", p * p), c(&[(p * p, 0), (0, 1)])),
        (format!("R/({})", p * p), c(&[(p * p, 0)])),
        (format!("R/({},{p}x)", p * p), c(&[(p * p, 0), (0, p)])),
        (format!("Z/{p}+Z/{}", p * p), FgModule::trivial_x(&[p as u64, (p * p) as u64])),
    ]
}

fn order(m: &FgModule) -> u64 {
    m.order().and_then(|o| u64::try_from(&o).ok()).expect("finite")
}

/// Engine test for essentiality in a finite module: `sub ⊇ soc`.
fn engine_essential(m: &FgModule, p: u64, sub: &[Vec<BigInt>]) -> Result<bool, String> {
    let soc = m.socle(PrimeIdeal::MaximalAt(p)).map_err(|e| e.to_string())?;
    let lat = Lattice::from_generators(m.rank(), sub).sum(m.relations());
    if m.is_zero() {
        return Ok(true);
    }
    Ok(soc.generators.iter().all(|g| match g {
        Element::Vector(v) => lat.contains(v),
        _ => false,
    }))
}

fn dual_pairs(p: u64, pairs: &mut usize) -> Result<(), String> {
    let windows: Vec<(Vec<usize>, Vec<Vec<Vec<(i64, i64)>>>)> = vec![
        (vec![1, 1, 1], vec![vec![vec![(0, 1)]], vec![vec![(0, 1)]]]),
        (vec![1, 1], vec![vec![vec![(p as i64, 0)]]]),
        (vec![1, 1], vec![vec![vec![(p as i64, 1)]]]),
        (vec![2, 2], vec![vec![vec![(0, 1), (p as i64, 0)], vec![(0, 0), (0, 1)]]]),
        (vec![1, 2], vec![vec![vec![(0, 1)], vec![(p as i64, 0)]]]),
    ];
    for k in 1..=2u32 {
        let base = FgModule::cyclic(&Ideal::int(&[(p.pow(k) as i64, 0)])).expect("ideal");
        for (ranks, maps) in &windows {
            let rm: Vec<RMatrix> = maps.iter().map(|d| RMatrix::from_pairs(d)).collect();
            let dc = DualComplex::new(DualTarget::Prufer(p), base.clone(), 0, ranks.clone(), rm)
                .map_err(|e| e.to_string())?;
            let fc = dual_window(p, k, 0, ranks, &dc.maps).map_err(|e| e.to_string())?;
            for n in 0..ranks.len() as i64 {
                let engine = match dc.cohomology_at(n).map_err(|e| e.to_string())? {
                    ModuleDesc::Zero => 1,
                    ModuleDesc::Dual(_, h) => order(&h),
                    other => return Err(format!("unexpected cohomology {other}")),
                };
                let brute = brute_homology(&fc, n).map_err(|e| e.to_string())?.size;
                if engine != brute {
                    return Err(format!("H^{n} of dual window {ranks:?} over Z/{}: {engine} vs {brute}", p.pow(k)));
                }
                *pairs += 1;
            }
        }
    }
    Ok(())
}

fn oracle_pairs() -> Verdict {
    let mut pairs = 0;
    for p in ORACLE_PRIMES {
        let mods = fg_modules(p as i64);
        for (name, m) in &mods {
            let f = FiniteModule::from_fg(m).map_err(|e| e.to_string())?;
            let brute = brute_ass(&f).map_err(|e| e.to_string())?;
            if ass_fg(m) != brute {
                return Err(format!("ass {name}: {:?} vs {brute:?}", ass_fg(m)));
            }
            let soc = m.socle(PrimeIdeal::MaximalAt(p)).map_err(|e| e.to_string())?;
            let brute_soc = brute_socle(&f, p).map_err(|e| e.to_string())?.len() as u64;
            if p.pow(soc.dim() as u32) != brute_soc {
                return Err(format!("socle {name}: dim {} vs {brute_soc} elements", soc.dim()));
            }
            pairs += 2;
            // x·m and p·m
            let e = |j: usize| -> Vec<BigInt> { (0..m.rank()).map(|i| BigInt::from((i == j) as i64)).collect() };
            let xm: Vec<Vec<BigInt>> = (0..m.rank()).map(|j| m.x_apply(&e(j))).collect();
            let pm: Vec<Vec<BigInt>> = (0..m.rank()).map(|j| e(j).iter().map(|c| c * p).collect()).collect();
            let fx: Vec<Elt> = (0..f.rank()).map(|j| f.x_apply(&f.basis(j))).collect();
            let fp: Vec<Elt> = (0..f.rank()).map(|j| f.scale(p as i64, &f.basis(j))).collect();
            for (label, sub, fsub) in [("x", &xm, &fx), ("p", &pm, &fp)] {
                let a = engine_essential(m, p, sub)?;
                let b = brute_essential(fsub, &f).map_err(|e| e.to_string())?;
                if a != b {
                    return Err(format!("essential {label}·{name}: {a} vs {b}"));
                }
                pairs += 1;
            }
        }
        for (na, a) in mods.iter().take(4) {
            let fa = FiniteModule::from_fg(a).map_err(|e| e.to_string())?;
            let res = free_resolution(a, 3).map_err(|e| e.to_string())?;
            for (nb, b) in mods.iter().take(4) {
                let fb = FiniteModule::from_fg(b).map_err(|e| e.to_string())?;
                let hom = order(&res.hom_into(b).map_err(|e| e.to_string())?.homology(0));
                let ten = order(&res.tensor(b).map_err(|e| e.to_string())?.homology(0));
                let bh = brute_hom(&fa, &fb).map_err(|e| e.to_string())?.size();
                let bt = brute_tensor(&fa, &fb).map_err(|e| e.to_string())?.size();
                if hom != bh || ten != bt {
                    return Err(format!("{na}, {nb}: Hom {hom} vs {bh}, tensor {ten} vs {bt}"));
                }
                pairs += 2;
            }
        }
        dual_pairs(p, &mut pairs)?;
        // two-term homotopy: E -x-> E against (Z/p)[x]/(x²) -x-> itself, and the identity
        let rt = FiniteModule::dual_numbers(p, 1);
        let xmap = FiniteMap::new(&rt, &rt, vec![vec![0, 1], vec![0, 0]]).map_err(|e| e.to_string())?;
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        for (label, d, fmap) in [
            ("x", RMatrix::x_times_identity(1), xmap),
            ("id", RMatrix::identity(1), FiniteMap::identity(&rt)),
        ] {
            let c = ComplexShape::e_window(p, 0, vec![1, 1], vec![d]).map_err(|e| e.to_string())?;
            let v = contractibility_verdict(&c, 0, 1, 50, &mut rng).map_err(|e| e.to_string())?;
            let fc = FiniteComplex::new(0, vec![rt.clone(), rt.clone()], vec![fmap]).map_err(|e| e.to_string())?;
            let found = brute_homotopy(&fc).map_err(|e| e.to_string())?.found.is_some();
            let engine = match v {
                ContractVerdict::Contractible(_) => true,
                ContractVerdict::NotContractible(_) => false,
                ContractVerdict::Unknown(s) => return Err(format!("homotopy {label}: unknown ({s})")),
            };
            if engine != found {
                return Err(format!("homotopy {label} at p={p}: engine {engine}, oracle {found}"));
            }
            pairs += 1;
        }
    }
    if pairs < ORACLE_PAIRS_MIN {
        return Err(format!("only {pairs} pairs"));
    }
    Ok(format!("{pairs} paired cases at p in {ORACLE_PRIMES:?}, 0 mismatches"))
}

fn random_matrix(rng: &mut ChaCha8Rng) -> IntMatrix {
    let (r, c) = (rng.gen_range(1..=MATRIX_DIM), rng.gen_range(1..=MATRIX_DIM));
    let rows: Vec<Vec<i64>> =
        (0..r).map(|_| (0..c).map(|_| rng.gen_range(-ENTRY_BOUND..=ENTRY_BOUND)).collect()).collect();
    IntMatrix::from_rows(&rows)
}

fn is_unimodular(u: &IntMatrix) -> bool {
    determinant(u).abs().is_one()
}

fn normal_forms() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for t in 0..MATRICES {
        let m = random_matrix(&mut rng);
        let (s, u, v) = smith_normal_form(&m);
        let brute = invariant_factors_by_minors(&m);
        if invariant_factors(&m) != brute {
            return Err(format!("matrix {t}: SNF {:?} vs minors {brute:?}", invariant_factors(&m)));
        }
        let usv = u.mul(&m).and_then(|a| a.mul(&v)).map_err(|e| e.to_string())?;
        if usv != s || !is_unimodular(&u) || !is_unimodular(&v) {
            return Err(format!("matrix {t}: U m V != S"));
        }
        let (h, w) = hermite_normal_form(&m);
        if m.mul(&w).map_err(|e| e.to_string())? != h || !is_unimodular(&w) {
            return Err(format!("matrix {t}: H != m U"));
        }
        let (lh, lm) = (Lattice::from_matrix(&h), Lattice::from_matrix(&m));
        if !lh.contains_lattice(&lm) || !lm.contains_lattice(&lh) {
            return Err(format!("matrix {t}: column spans differ"));
        }
        if determinantal_divisors(&h) != determinantal_divisors(&m) {
            return Err(format!("matrix {t}: HNF changes the gcd of minors"));
        }
        if s.rows() > 0 && s.cols() > 0 && (0..s.rows()).any(|i| (0..s.cols()).any(|j| i != j && !s[(i, j)].is_zero())) {
            return Err(format!("matrix {t}: S not diagonal"));
        }
    }
    Ok(format!("{MATRICES} random matrices up to {MATRIX_DIM}x{MATRIX_DIM}, entries in [-{ENTRY_BOUND}, {ENTRY_BOUND}]"))
}

fn determinism() -> Verdict {
    for name in ScenarioName::ALL {
        let s = Scenario { seed: 7, samples: 60, ..scenario(name, 3) };
        let a = run_scenario(&s).map_err(|e| e.to_string())?.without_timing().to_json();
        let b = run_scenario(&s).map_err(|e| e.to_string())?.without_timing().to_json();
        if a != b {
            return Err(format!("{name}: reports differ"));
        }
    }
    Ok(format!("{} scenarios, two runs each, identical JSON without timing", ScenarioName::ALL.len()))
}

fn claims_documented() -> Verdict {
    let doc = include_str!("../../../docs/claims.md");
    for name in ScenarioName::ALL {
        let r = run_scenario(&Scenario { samples: 20, ..scenario(name, 2) }).map_err(|e| e.to_string())?;
        if let Some(c) = r.checks.iter().find(|c| !doc.contains(&format!("`{}`", c.paper_ref))) {
            return Err(format!("{} cites undocumented {}", c.name, c.paper_ref));
        }
    }
    Ok("every claim id is listed in docs/claims.md".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 8] = [
        ("1 counterexample reproduction", prop_main),
        ("2 bounded-below equality", foxby),
        ("3 three-way support equivalence", equivalence),
        ("4 injective hull facts", injective_facts),
        ("5 oracle equivalence", oracle_pairs),
        ("6 normal forms vs minors", normal_forms),
        ("7 determinism", determinism),
        ("  claim ids documented", claims_documented),
    ];
    let mut failed = 0;
    for (label, f) in criteria {
        let t = Instant::now();
        let r = f();
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(msg) => println!("PASS  {label}: {msg} [{secs:.1}s]"),
            Err(msg) => {
                failed += 1;
                println!("FAIL  {label}: {msg} [{secs:.1}s]");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
