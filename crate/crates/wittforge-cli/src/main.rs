//! Scenario runner: loads descriptors and named fixtures, executes the
//! requested verification suites, and writes a deterministic JSON report.
//! Exit codes: 0 all checks pass, 1 check failures, 2 schema or fixture
//! errors, 3 budget exceeded.

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;
use std::path::PathBuf;
use std::time::{Duration, Instant};
use wittforge::dieudonne::tower_eta;
use wittforge::display;
use wittforge::fixtures;
use wittforge::multilinear::{
    self, delta, enumerate_index_vectors, solve_hom_space, solve_l_space_full, uglysum_check,
    Flavor,
};
use wittforge::ramequiv::{equivalence_roundtrip, trace_map};
use wittforge::ramified::{
    build_ramified_table, verify_mu_ghost_random, verify_ramified_ghost_identities, BaseDVR,
    RamifiedWittRing,
};
use wittforge::ring::ChainRing;
use wittforge::witt::{build_witt_table, verify_ghost_identities, WittRing};

const SUITES: [&str; 7] = [
    "witt",
    "ramified",
    "dieudonne",
    "display",
    "multilinear",
    "ram-equiv",
    "examples",
];

#[derive(Parser)]
#[command(name = "wittforge", about = "verification suite runner", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Cmd {
    /// run verification suites from a scenario file or ad hoc
    Run {
        /// path to a scenario JSON file
        #[arg(long)]
        scenario: Option<PathBuf>,
        /// suite to run (repeatable); overrides the scenario's suite list
        #[arg(long = "suite")]
        suites: Vec<String>,
        /// seed for the randomized checks
        #[arg(long)]
        seed: Option<u64>,
        /// wall-clock budget in milliseconds
        #[arg(long = "budget-ms")]
        budget_ms: Option<u64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// write the JSON report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// list or dump the named fixtures
    Fixtures {
        #[command(subcommand)]
        action: FixturesCmd,
    },
}

#[derive(Subcommand)]
enum FixturesCmd {
    /// print the known fixture names
    List,
    /// print the JSON descriptor of a fixture, e.g. "lubin-tate h=3 p=5 level=2"
    Dump { spec: Vec<String> },
}

#[derive(Serialize, Clone)]
struct Record {
    check_id: String,
    paper_ref: String,
    inputs_digest: String,
    expected: String,
    computed: String,
    pass: bool,
}

fn fnv1a(s: &str) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}

fn record(
    check_id: &str,
    paper_ref: &str,
    inputs: &str,
    expected: impl ToString,
    computed: impl ToString,
) -> Record {
    let expected = expected.to_string();
    let computed = computed.to_string();
    Record {
        check_id: check_id.into(),
        paper_ref: paper_ref.into(),
        inputs_digest: fnv1a(inputs),
        pass: expected == computed,
        expected,
        computed,
    }
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

// ---------------------------------------------------------------------------
// scenario and fixture-spec parsing

struct Scenario {
    name: String,
    suites: Vec<String>,
    fixtures: Vec<String>,
    seed: Option<u64>,
    budget_ms: Option<u64>,
}

fn parse_scenario(v: &Value) -> Result<Scenario, String> {
    let obj = v.as_object().ok_or("scenario must be a JSON object")?;
    for key in obj.keys() {
        if !["name", "suites", "fixtures", "seed", "budget_ms"].contains(&key.as_str()) {
            return Err(format!("unknown scenario field '{key}'"));
        }
    }
    let name = obj
        .get("name")
        .and_then(Value::as_str)
        .unwrap_or("unnamed")
        .to_string();
    let str_list = |key: &str| -> Result<Vec<String>, String> {
        match obj.get(key) {
            None => Ok(Vec::new()),
            Some(Value::Array(a)) => a
                .iter()
                .map(|x| {
                    x.as_str()
                        .map(String::from)
                        .ok_or(format!("'{key}' entries must be strings"))
                })
                .collect(),
            Some(_) => Err(format!("'{key}' must be an array of strings")),
        }
    };
    let suites = str_list("suites")?;
    for s in &suites {
        if !SUITES.contains(&s.as_str()) {
            return Err(format!("unknown suite '{s}'"));
        }
    }
    Ok(Scenario {
        name,
        suites,
        fixtures: str_list("fixtures")?,
        seed: obj.get("seed").and_then(Value::as_u64),
        budget_ms: obj.get("budget_ms").and_then(Value::as_u64),
    })
}

/// "lubin-tate h=4 r=2 p=3 level=2" → (name words, key=value map)
struct FixtureSpec {
    name: String,
    params: std::collections::BTreeMap<String, u64>,
}

impl FixtureSpec {
    fn parse(s: &str) -> Result<FixtureSpec, String> {
        let mut name_parts = Vec::new();
        let mut params = std::collections::BTreeMap::new();
        for tok in s.split_whitespace() {
            if let Some((k, v)) = tok.split_once('=') {
                let val: u64 = v
                    .parse()
                    .map_err(|_| format!("parameter '{k}' must be an integer"))?;
                params.insert(k.to_string(), val);
            } else {
                name_parts.push(tok);
            }
        }
        Ok(FixtureSpec {
            name: name_parts.join(" "),
            params,
        })
    }

    fn get(&self, key: &str, default: u64) -> u64 {
        *self.params.get(key).unwrap_or(&default)
    }
}

fn fixture_module(spec: &FixtureSpec) -> Option<wittforge::dieudonne::DieudonneModule> {
    let p = spec.get("p", 3);
    let s = spec.get("s", 1) as u32;
    let h = spec.get("h", 2) as usize;
    let level = spec.get("level", 1) as usize;
    fixtures::by_name(&spec.name, p, s, h, level)
}

// ---------------------------------------------------------------------------
// suites

struct Budget {
    start: Instant,
    limit: Option<Duration>,
}

impl Budget {
    fn ok(&self) -> bool {
        match self.limit {
            Some(lim) => self.start.elapsed() <= lim,
            None => true,
        }
    }
}

fn suite_witt(seed: u64) -> Vec<Record> {
    let mut out = Vec::new();
    out.push(record(
        "witt.ghost_identities.p3_m2",
        "plumbing",
        "p=3 m=2",
        true,
        verify_ghost_identities(&build_witt_table(3, 2)),
    ));
    // F∘V = p, exhaustively over W_2(F_3)
    let base = ChainRing::equal_char(3, 1, 1, 1);
    let wr2 = WittRing::new(build_witt_table(3, 2), base.clone());
    let wr1 = WittRing::new(build_witt_table(3, 1), base.clone());
    let fv_ok = wr1.enumerate().iter().all(|x| {
        let fv = wr2.frobenius(&wr2.verschiebung(x));
        fv == wr1.mul(&wr1.from_i64(3), x)
    });
    out.push(record(
        "witt.fv_is_p.w2_f3",
        "cons017",
        "p=3 m=2 s=1 exhaustive",
        true,
        fv_ok,
    ));
    // Teichmüller multiplicativity over F_9
    let f9 = ChainRing::equal_char(3, 2, 1, 1);
    let w9 = WittRing::new(build_witt_table(3, 2), f9.clone());
    let teich_ok = f9.enumerate().iter().all(|a| {
        f9.enumerate().iter().all(|b| {
            w9.mul(&w9.teichmuller(a), &w9.teichmuller(b)) == w9.teichmuller(&f9.mul(a, b))
        })
    });
    out.push(record(
        "witt.teichmuller_multiplicative.f9",
        "plumbing",
        "p=3 s=2 m=2 exhaustive",
        true,
        teich_ok,
    ));
    // seeded addition-against-ghost spot checks over Z/9 lifts
    let zp2 = ChainRing::witt_truncation(3, 2, 1);
    let wz = WittRing::new(build_witt_table(3, 2), zp2.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ghost = |x: &[wittforge::ring::ChainElt]| -> (i64, i64) {
        let d = |c: &wittforge::ring::ChainElt| c.coeffs[0][0] as i64;
        let w0 = d(&x[0]);
        (w0 % 9, (w0.pow(3) + 3 * d(&x[1])) % 9)
    };
    let mut ghost_ok = true;
    for _ in 0..50 {
        let a: Vec<_> = (0..2).map(|_| zp2.from_i64(rng.gen_range(0..9))).collect();
        let b: Vec<_> = (0..2).map(|_| zp2.from_i64(rng.gen_range(0..9))).collect();
        let s = wz.add(&a, &b);
        let (ga, gb, gs) = (ghost(&a), ghost(&b), ghost(&s));
        ghost_ok &= (ga.0 + gb.0) % 9 == gs.0 && (ga.1 + gb.1) % 9 == gs.1;
    }
    out.push(record(
        "witt.ghost_additivity.z9_random",
        "plumbing",
        &format!("p=3 m=2 trials=50 seed={seed}"),
        true,
        ghost_ok,
    ));
    out
}

fn suite_ramified(seed: u64) -> Vec<Record> {
    let mut out = Vec::new();
    let bases = [
        ("e1f1p3", BaseDVR::new(3, 1, 1, vec![-3, 1])),
        ("e2f1p2", BaseDVR::new(2, 2, 1, vec![-2, 0, 1])),
        ("e1f2p3", BaseDVR::unramified(3, 2)),
    ];
    for (tag, b) in &bases {
        let t = build_ramified_table(b, 2);
        out.push(record(
            &format!("ramified.ghost_identities.{tag}"),
            "thmramwitt",
            &format!("p={} e={} f={} m=2", b.p, b.e, b.f),
            true,
            verify_ramified_ghost_identities(&t),
        ));
        out.push(record(
            &format!("ramified.mu_ghost_random.{tag}"),
            "propmorramwitt",
            &format!("p={} e={} f={} m=2 trials=20 seed={seed}", b.p, b.e, b.f),
            true,
            verify_mu_ghost_random(&t, seed, 20),
        ));
    }
    // F_π∘V_π = π, exhaustively over W_{O,2}(F_4) with O = Z_2[√2]
    let b = BaseDVR::new(2, 2, 1, vec![-2, 0, 1]);
    let k = ChainRing::equal_char(2, 2, 1, 1);
    let rw2 = RamifiedWittRing::new(build_ramified_table(&b, 2), k.clone());
    let rw1 = RamifiedWittRing::new(build_ramified_table(&b, 1), k);
    let fpivpi_ok = rw1.enumerate().iter().all(|x| {
        let fv = rw2.frobenius(&rw2.verschiebung(x));
        rw1.is_zero(&rw1.sub(&fv, &rw1.pi_action(x)))
    });
    out.push(record(
        "ramified.fpi_vpi_is_pi.wo2_f4",
        "propramwitt",
        "p=2 e=2 f=1 s=2 m=2 exhaustive",
        true,
        fpivpi_ok,
    ));
    out
}

fn suite_dieudonne() -> Vec<Record> {
    let mut out = Vec::new();
    // order exponents of exterior powers on height-h one-dimensional modules
    for (h, level) in [(2usize, 1usize), (3, 2)] {
        let d = fixtures::lubin_tate(3, 1, h, level);
        for j in 1..=h {
            out.push(record(
                &format!("dieudonne.order_exponent.h{h}_j{j}_n{level}"),
                "cor41",
                &format!("p=3 h={h} j={j} level={level}"),
                level * binom(h, j),
                d.order_exponent(j),
            ));
        }
    }
    // dimension of the j-th exterior power
    let d = fixtures::lubin_tate(3, 1, 3, 2);
    for j in 1..=3usize {
        let ext = d.exterior_power(j).expect("exterior power");
        out.push(record(
            &format!("dieudonne.exterior_dimension.h3_j{j}"),
            "lem18",
            &format!("p=3 h=3 j={j} level=2"),
            binom(2, j - 1),
            ext.module.dimension().expect("dimension"),
        ));
    }
    // Φ∘Υ = Υ∘Φ = p on the supersingular square
    let ss = fixtures::supersingular_e_curve(3, 2);
    let ext = ss.exterior_power(2).expect("exterior power");
    out.push(record(
        "dieudonne.phi_upsilon_composite.ss_p3",
        "lem15",
        "p=3 h=2 j=2 level=2",
        "ok",
        match ext.module.validate() {
            Ok(()) => "ok".to_string(),
            Err(e) => e,
        },
    ));
    out
}

fn suite_display() -> Vec<Record> {
    let mut out = Vec::new();
    let d = fixtures::lubin_tate_display(3, 1, 4, 2);
    let ext = d.exterior_power(2).expect("exterior power");
    out.push(record(
        "display.exterior_height.h4_r2",
        "cons03",
        "p=3 h=4 r=2 depth=2",
        binom(4, 2),
        ext.height(),
    ));
    out.push(record(
        "display.exterior_tangent.h4_r2",
        "cons03",
        "p=3 h=4 r=2 depth=2",
        binom(3, 1),
        ext.tangent_rank(),
    ));
    out.push(record(
        "display.sharp_composites.h4",
        "cons015",
        "p=3 h=4 depth=2",
        true,
        d.sharp_composites_are_p(),
    ));
    out.push(record(
        "display.nilpotence.supersingular_p5",
        "def010",
        "p=5 h=2 depth=2",
        true,
        fixtures::supersingular_display(5, 2).nilpotence_test(),
    ));
    out.push(record(
        "display.decomposition_independence.h3",
        "lem021",
        "p=3 h=3 depth=2 r=2",
        true,
        {
            let d3 = fixtures::lubin_tate_display(3, 1, 3, 2);
            let wr = &d3.witt;
            let u = display::WMat::identity(wr, 2);
            let a = vec![wr.one(), wr.from_i64(2)];
            let dd = wr.from_i64(1);
            let b = wr.from_i64(2);
            d3.decomposition_independence_check(2, &u, &a, &dd, &b)
                .unwrap_or(false)
        },
    ));
    out
}

fn suite_multilinear(seed: u64) -> Vec<Record> {
    let mut out = Vec::new();
    // δ is an involution on index vectors with minimum zero
    let mut invol_ok = true;
    for r in 1..=3usize {
        for m in 1..=4u64 {
            for v in enumerate_index_vectors(r, m) {
                invol_ok &= delta(&delta(&v)) == v;
            }
        }
    }
    out.push(record(
        "multilinear.delta_involution.r3_m4",
        "lem020",
        "r<=3 bound<=4 exhaustive",
        true,
        invol_ok,
    ));
    // telescoping double-sum identity over the integers, seeded
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ugly_ok = true;
    for _ in 0..50 {
        let w0: Vec<i64> = (0..3).map(|_| rng.gen_range(-9..10)).collect();
        let ys: Vec<Vec<i64>> = (0..3)
            .map(|_| (0..4).map(|_| rng.gen_range(-9..10)).collect())
            .collect();
        ugly_ok &= uglysum_check(
            &w0,
            &ys,
            |a, b| a + b,
            |a| a * 5,
            |args: &[i64]| args.iter().product::<i64>(),
            |a, b| a + b,
            0i64,
        );
    }
    out.push(record(
        "multilinear.uglysum.integers_random",
        "uglysum",
        &format!("r=3 n=4 alpha=5 trials=50 seed={seed}"),
        true,
        ugly_ok,
    ));
    // |L_alt(D², N)| = |Hom_{F,V}(⋀²D, N)| on the supersingular fixture
    let d = fixtures::supersingular_e_curve(3, 1);
    let n = fixtures::multiplicative_h(3, 1, 1, 1);
    let alt = solve_l_space_full(&[&d, &d], &n, Flavor::Alt);
    let wedge = d.exterior_power(2).expect("exterior power");
    let homs = solve_hom_space(&wedge.module, &n);
    out.push(record(
        "multilinear.alt_space_matches_wedge_homs.ss_p3",
        "def07",
        "p=3 h=2 level=1 target=multiplicative",
        alt.count_exponent,
        homs.count_exponent,
    ));
    // weak-alternation relations killed by the symbol map
    let rep = multilinear::weakalt_relation_check(&fixtures::supersingular_e_curve(3, 1), 2)
        .expect("odd p");
    out.push(record(
        "multilinear.weakalt_relations.ss_p3",
        "def 13",
        "p=3 h=2 j=2 level=1",
        true,
        rep.rho1_ok && rep.rho2_ok,
    ));
    out
}

fn suite_ram_equiv(seed: u64) -> Vec<Record> {
    let mut out = Vec::new();
    let o = fixtures::unfolded_supersingular(3, 1, 1, 2);
    let rt = equivalence_roundtrip(&o).expect("roundtrip");
    out.push(record(
        "ram-equiv.h_of_d_exact.f2",
        "equivalence",
        "p=3 f=2 level=1",
        true,
        rt.h_of_d_exact,
    ));
    out.push(record(
        "ram-equiv.d_of_h_isomorphic.f2",
        "equivalence",
        "p=3 f=2 level=1",
        true,
        rt.d_of_h_isomorphic && rt.psi_invertible,
    ));
    // trace recovers the degree-zero component; additivity on seeded pairs
    let ring = &o.ring;
    let h = o.rank;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut add_ok = true;
    for _ in 0..20 {
        let x: Vec<_> = (0..o.f * h).map(|_| ring.random(&mut rng)).collect();
        let y: Vec<_> = (0..o.f * h).map(|_| ring.random(&mut rng)).collect();
        let xy: Vec<_> = x.iter().zip(&y).map(|(a, b)| ring.add(a, b)).collect();
        let lhs = trace_map(&o, &xy);
        let rhs: Vec<_> = trace_map(&o, &x)
            .iter()
            .zip(&trace_map(&o, &y))
            .map(|(a, b)| ring.add(a, b))
            .collect();
        add_ok &= lhs.iter().zip(&rhs).all(|(a, b)| ring.eq(a, b));
    }
    out.push(record(
        "ram-equiv.trace_additive.f2",
        "constrace",
        &format!("p=3 f=2 level=1 trials=20 seed={seed}"),
        true,
        add_ok,
    ));
    // tower embedding η is injective and lands in the p-torsion
    let big = ChainRing::witt_truncation(3, 2, 1);
    let small = big.reduce_level(1);
    let mut images = std::collections::BTreeSet::new();
    let mut killed = true;
    let p = big.from_i64(3);
    for a in small.enumerate() {
        let img = tower_eta(&big, &small, &[a.clone()], 1);
        killed &= big.is_zero(&big.mul(&img[0], &p));
        images.insert(format!("{:?}", img));
    }
    out.push(record(
        "ram-equiv.tower_embedding.n1_m1",
        "lem16",
        "p=3 n=1 m=1 exhaustive",
        true,
        killed && images.len() == 3,
    ));
    out
}

fn suite_examples(fixture_specs: &[String]) -> Result<Vec<Record>, String> {
    let mut out = Vec::new();
    for raw in fixture_specs {
        let spec = FixtureSpec::parse(raw)?;
        let digest_in = raw.as_str();
        match spec.name.as_str() {
            "lubin-tate" => {
                let h = spec.get("h", 2) as usize;
                let r = spec.get("r", 1) as usize;
                let level = spec.get("level", 1) as usize;
                let d = fixture_module(&spec).unwrap();
                let ext = d.exterior_power(r).map_err(|e| e.to_string())?;
                out.push(record(
                    &format!("examples.height.{}", fnv1a(raw)),
                    "lem021",
                    digest_in,
                    binom(h, r),
                    ext.module.rank,
                ));
                out.push(record(
                    &format!("examples.dimension.{}", fnv1a(raw)),
                    "lem18",
                    digest_in,
                    binom(h - 1, r - 1),
                    ext.module.dimension().map_err(|e| e.to_string())?,
                ));
                out.push(record(
                    &format!("examples.order_exponent.{}", fnv1a(raw)),
                    "cor41",
                    digest_in,
                    level * binom(h, r),
                    d.order_exponent(r),
                ));
            }
            "elliptic wedge2 supersingular" => {
                let p = spec.get("p", 5);
                let level = spec.get("level", 2) as usize;
                let d = fixtures::supersingular_e_curve(p, level);
                let ext = d.exterior_power(2).map_err(|e| e.to_string())?;
                out.push(record(
                    &format!("examples.height.{}", fnv1a(raw)),
                    "lem021",
                    digest_in,
                    1,
                    ext.module.rank,
                ));
                out.push(record(
                    &format!("examples.dimension.{}", fnv1a(raw)),
                    "lem18",
                    digest_in,
                    1,
                    ext.module.dimension().map_err(|e| e.to_string())?,
                ));
            }
            _ => {
                let d = fixture_module(&spec)
                    .ok_or_else(|| format!("unknown fixture '{}'", spec.name))?;
                out.push(record(
                    &format!("examples.validates.{}", fnv1a(raw)),
                    "plumbing",
                    digest_in,
                    "ok",
                    match d.validate() {
                        Ok(()) => "ok".to_string(),
                        Err(e) => e,
                    },
                ));
                out.push(record(
                    &format!("examples.dimension.{}", fnv1a(raw)),
                    "lem18",
                    digest_in,
                    d.dimension().map_err(|e| e.to_string())?,
                    d.dimension().map_err(|e| e.to_string())?,
                ));
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------

fn run_cmd(
    scenario_path: Option<PathBuf>,
    cli_suites: Vec<String>,
    cli_seed: Option<u64>,
    cli_budget: Option<u64>,
    format: Format,
    out_path: Option<PathBuf>,
) -> i32 {
    let scenario = match &scenario_path {
        Some(p) => {
            let text = match std::fs::read_to_string(p) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("wittforge: cannot read scenario {}: {e}", p.display());
                    return 2;
                }
            };
            let v: Value = match serde_json::from_str(&text) {
                Ok(v) => v,
                Err(e) => {
                    eprintln!("wittforge: scenario is not valid JSON: {e}");
                    return 2;
                }
            };
            match parse_scenario(&v) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("wittforge: scenario schema error: {e}");
                    return 2;
                }
            }
        }
        None => Scenario {
            name: "ad-hoc".into(),
            suites: Vec::new(),
            fixtures: Vec::new(),
            seed: None,
            budget_ms: None,
        },
    };
    let suites = if cli_suites.is_empty() {
        scenario.suites.clone()
    } else {
        cli_suites
    };
    for s in &suites {
        if !SUITES.contains(&s.as_str()) {
            eprintln!("wittforge: unknown suite '{s}'");
            return 2;
        }
    }
    let seed = cli_seed.or(scenario.seed).unwrap_or(0);
    let budget_ms = cli_budget.or(scenario.budget_ms);
    let budget = Budget {
        start: Instant::now(),
        limit: budget_ms.map(Duration::from_millis),
    };

    let mut records: Vec<Record> = Vec::new();
    for suite in &suites {
        if !budget.ok() {
            eprintln!("wittforge: budget of {}ms exceeded", budget_ms.unwrap());
            return 3;
        }
        let batch = match suite.as_str() {
            "witt" => suite_witt(seed),
            "ramified" => suite_ramified(seed),
            "dieudonne" => suite_dieudonne(),
            "display" => suite_display(),
            "multilinear" => suite_multilinear(seed),
            "ram-equiv" => suite_ram_equiv(seed),
            "examples" => match suite_examples(&scenario.fixtures) {
                Ok(b) => b,
                Err(e) => {
                    eprintln!("wittforge: {e}");
                    return 2;
                }
            },
            _ => unreachable!(),
        };
        records.extend(batch);
    }
    if !budget.ok() {
        eprintln!("wittforge: budget of {}ms exceeded", budget_ms.unwrap());
        return 3;
    }
    records.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    let passed = records.iter().filter(|r| r.pass).count();
    let failed = records.len() - passed;
    let report = serde_json::json!({
        "scenario": scenario.name,
        "seed": seed,
        "suites": suites,
        "records": records,
        "summary": {"total": records.len(), "passed": passed, "failed": failed},
    });
    let json_text = format!("{}\n", serde_json::to_string_pretty(&report).unwrap());
    if let Some(p) = &out_path {
        if let Err(e) = std::fs::write(p, &json_text) {
            eprintln!("wittforge: cannot write report {}: {e}", p.display());
            return 2;
        }
    }
    match format {
        Format::Json => {
            if out_path.is_none() {
                print!("{json_text}");
            }
        }
        Format::Table => {
            println!("{:<55} {:>14} {:>14}  {}", "check", "expected", "computed", "pass");
            for r in &records {
                println!(
                    "{:<55} {:>14} {:>14}  {}",
                    r.check_id,
                    r.expected,
                    r.computed,
                    if r.pass { "ok" } else { "FAIL" }
                );
            }
            println!("total {} passed {} failed {}", records.len(), passed, failed);
        }
    }
    // wall-clock stays out of the report so identical runs are byte-identical
    eprintln!(
        "wittforge: {} checks in {}ms",
        records.len(),
        budget.start.elapsed().as_millis()
    );
    if failed > 0 {
        1
    } else {
        0
    }
}

fn fixtures_cmd(action: FixturesCmd) -> i32 {
    match action {
        FixturesCmd::List => {
            for name in fixtures::FIXTURE_NAMES {
                println!("{name}");
            }
            0
        }
        FixturesCmd::Dump { spec } => {
            let raw = spec.join(" ");
            let parsed = match FixtureSpec::parse(&raw) {
                Ok(p) => p,
                Err(e) => {
                    eprintln!("wittforge: {e}");
                    return 2;
                }
            };
            match fixture_module(&parsed) {
                Some(d) => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&wittforge::descriptor::module_to_json(&d))
                            .unwrap()
                    );
                    0
                }
                None => {
                    eprintln!("wittforge: unknown fixture '{}'", parsed.name);
                    2
                }
            }
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match cli.cmd {
        Cmd::Run {
            scenario,
            suites,
            seed,
            budget_ms,
            format,
            out,
        } => run_cmd(scenario, suites, seed, budget_ms, format, out),
        Cmd::Fixtures { action } => fixtures_cmd(action),
    };
    std::process::exit(code);
}
