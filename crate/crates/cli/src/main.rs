use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use hypersurf::certify::{check_hypotheses, trace_curve, verdict, CurveRole, Verdict, VerdictKind};
use hypersurf::cuboid::cuboid_report;
use hypersurf::genfam::{
    classify_multidegree, family_tower_spec, generalized_cuboid_model, instantiate_family, validate_family,
    weighted_tangent_hypersurface, FamilyKind,
};
use hypersurf::geometry::CurveGeom;
use hypersurf::hjsing::{resolution_data, vanishing_certificate, SingularityType};
use hypersurf::invariants::{chi_via_pushforward, level_invariants, noether_gap, LevelInvariants};
use hypersurf::presets::{cuboid_spec, generalized_cuboid_spec, tangent_lines_spec};
use hypersurf::spec_io::{canonical_json, parse_spec, SpecFormat};
use hypersurf::{build_tower, Error, Tower, TowerSpec};

#[derive(Parser)]
#[command(name = "hypersurf", version, about = "Towers of cyclic covers and hyperbolicity certificates")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, global = true, default_value_t = OutputFormat::Json)]
    output: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Resolution data of the cyclic quotient singularity 1/m(1,q).
    Hj { m: u64, q: u64 },
    /// Validate a tower spec and compute its verdict.
    TowerCheck {
        #[arg(long)]
        spec: String,
    },
    /// Per-floor invariants of a tower spec.
    Invariants {
        #[arg(long)]
        spec: String,
    },
    /// Family routes for a multidegree.
    Classify {
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u64>,
    },
    /// Emit an explicit family of complete intersections.
    Generate {
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u64>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
        /// Family to instantiate (FAM_A, FAM_B, FAM_C, FAM_D); defaults to the primary route.
        #[arg(long)]
        family: Option<String>,
    },
    /// Re-derive the reference constants and print one PASS/FAIL line per check.
    VerifyPaper {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Consistency(_)) { 3 } else { 2 };
        Failure { code, message: e.to_string() }
    }
}

type CliResult = Result<(String, u8), Failure>;

fn read_spec(path: &str) -> Result<TowerSpec, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure { code: 2, message: format!("{path}: {e}") })?;
    parse_spec(&text, SpecFormat::detect(Some(path), &text))
        .map_err(|e| Failure { code: 2, message: format!("{path}: {e}") })
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn inventory_json(t: &Tower) -> Value {
    t.singularity_inventory()
        .iter()
        .map(|(s, n)| json!({"type": s.to_string(), "m": s.m, "q": s.q, "count": n}))
        .collect()
}

fn run_hj(m: u64, q: u64, out: OutputFormat) -> CliResult {
    let s = SingularityType::new(m, q)?;
    let d = resolution_data(s);
    let cert = vanishing_certificate(s, 2);
    let report = match out {
        OutputFormat::Json => {
            let mut v = serde_json::to_value(&d).expect("serializable");
            v["type"] = json!(s.to_string());
            v["certificate"] = serde_json::to_value(cert).expect("serializable");
            pretty(&v)
        }
        OutputFormat::Text => {
            let mut t = String::new();
            let _ = writeln!(t, "{s}");
            let _ = writeln!(t, "b      {:?}", d.b);
            let _ = writeln!(t, "alpha  {:?}", d.alpha);
            let _ = writeln!(t, "beta   {:?}", d.beta);
            let _ = writeln!(t, "gamma  {:?}", d.gamma);
            let disc: Vec<String> = d.discrepancies.iter().map(|r| r.to_string()).collect();
            let _ = writeln!(t, "discrepancies [{}]", disc.join(", "));
            let _ = write!(t, "certificate {}", serde_json::to_value(cert).expect("serializable").as_str().unwrap_or(""));
            t
        }
    };
    Ok((report, 0))
}

fn verdict_text(spec_path: &str, t: &Tower, v: &Verdict) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "spec        {spec_path}");
    let _ = writeln!(s, "base        {}  omega {}  levels {}  degree {}", t.base(), t.omega().id, t.n_levels(), t.total_degree());
    for (ty, n) in t.singularity_inventory() {
        let _ = writeln!(s, "singular    {n} x {ty}");
    }
    let c = &v.checks;
    let _ = writeln!(s, "criterion   {} ample={}", c.criterion_class, c.ampleness_ok);
    let _ = writeln!(s, "checks      multiplicity={} snc={} vanishing={}", c.multiplicity_ok, c.snc_ok, c.vanishing_ok);
    for w in c.multiplicity_witnesses.iter().chain(&c.snc_witnesses) {
        let _ = writeln!(s, "  witness   {w}");
    }
    for w in &c.vanishing_witnesses {
        let _ = writeln!(s, "  witness   level {} node {} {} fails at E_{}", w.level, w.node, w.singularity, w.exceptional_index);
    }
    for cl in &v.curves {
        let _ = writeln!(s, "curve       {:<22} components {:>4} genus {}", cl.geom, cl.components, cl.genus);
    }
    for n in &v.notes {
        let _ = writeln!(s, "note        {n}");
    }
    let _ = write!(s, "verdict     {}", v.kind);
    s
}

fn run_tower_check(path: &str, out: OutputFormat) -> CliResult {
    let spec = read_spec(path)?;
    let echo: Value = serde_json::from_str(&canonical_json(&spec)).expect("canonical json");
    let t = build_tower(spec)?;
    let v = verdict(&t)?;
    let report = match out {
        OutputFormat::Json => pretty(&json!({
            "spec": echo,
            "total_degree": t.total_degree(),
            "singularities": inventory_json(&t),
            "verdict": v,
        })),
        OutputFormat::Text => verdict_text(path, &t, &v),
    };
    Ok((report, 0))
}

fn invariants_table(rows: &[LevelInvariants]) -> String {
    let header = ["floor", "chi", "K^2", "K class", "K ample", "D^2", "D.K", "branch genus"];
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let opt = |x: &Option<hypersurf::Rational>| x.as_ref().map_or("-".to_string(), |v| v.to_string());
            vec![
                r.level.to_string(),
                r.chi.to_string(),
                r.k2.to_string(),
                r.k_class.to_string(),
                r.k_ample.to_string(),
                opt(&r.d_sq),
                opt(&r.d_dot_k),
                r.branch_component_genus.map_or("-".to_string(), |g| g.to_string()),
            ]
        })
        .collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|i| cells.iter().map(|row| row[i].len()).chain([header[i].len()]).max().unwrap_or(0))
        .collect();
    let line = |row: Vec<&str>| -> String {
        row.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ")
    };
    let mut out = vec![line(header.to_vec())];
    for row in &cells {
        out.push(line(row.iter().map(String::as_str).collect()));
    }
    out.join("\n")
}

fn run_invariants(path: &str, out: OutputFormat) -> CliResult {
    let t = build_tower(read_spec(path)?)?;
    let rows = level_invariants(&t)?;
    let gap = if t.fiber_family().is_some() { Some(noether_gap(&t)?) } else { None };
    let report = match out {
        OutputFormat::Json => pretty(&json!({
            "levels": rows,
            "noether_gap": gap.map(|g| g.to_string()),
        })),
        OutputFormat::Text => {
            let mut s = invariants_table(&rows);
            if let Some(g) = gap {
                let _ = write!(s, "\nK^2 - 8 chi = {g}");
            }
            s
        }
    };
    Ok((report, 0))
}

fn run_classify(degrees: &[u64], out: OutputFormat) -> CliResult {
    let c = classify_multidegree(degrees)?;
    let routes: Vec<Value> = c.kinds.iter().map(|k| json!({"family": k, "route": k.route()})).collect();
    let report = match out {
        OutputFormat::Json => pretty(&json!({
            "degrees": degrees,
            "primary": c.primary(),
            "routes": routes,
            "note": c.note,
        })),
        OutputFormat::Text => {
            let mut s = format!("{}", c.primary());
            for k in &c.kinds {
                let _ = write!(s, "\n  {k}: {}", k.route());
            }
            if let Some(n) = &c.note {
                let _ = write!(s, "\n  note: {n}");
            }
            s
        }
    };
    Ok((report, 0))
}

fn run_generate(degrees: &[u64], format: OutputFormat, family: Option<&str>) -> CliResult {
    let kind = match family {
        Some(f) => FamilyKind::parse(f)?,
        None => classify_multidegree(degrees)?.primary(),
    };
    if kind == FamilyKind::NotCovered {
        return Err(Failure { code: 2, message: format!("multidegree {degrees:?} is not covered by any family") });
    }
    let eqs = instantiate_family(kind, degrees)?;
    let report = match format {
        OutputFormat::Json => pretty(&eqs.to_json()),
        OutputFormat::Text => eqs.to_text().trim_end().to_string(),
    };
    Ok((report, 0))
}

type Check = (&'static str, fn(u64) -> Result<String, String>);

fn expect<T: PartialEq + std::fmt::Debug>(got: T, want: T) -> Result<String, String> {
    if got == want {
        Ok(format!("{got:?}"))
    } else {
        Err(format!("got {got:?}, expected {want:?}"))
    }
}

fn tower(spec: TowerSpec) -> Result<Tower, String> {
    build_tower(spec).map_err(|e| e.to_string())
}

fn sing_total(t: &Tower) -> u64 {
    t.singularity_inventory().values().sum()
}

fn checks() -> Vec<Check> {
    vec![
        ("cuboid-singular-points", |_| expect(sing_total(&tower(cuboid_spec())?), 48)),
        ("cuboid-degree-bound", |_| expect(cuboid_report().map_err(|e| e.to_string())?.degree_bound_constant, 44)),
        ("cuboid-partition", |_| {
            let r = cuboid_report().map_err(|e| e.to_string())?;
            let parts: Vec<(u64, u64)> = r.partition.iter().map(|p| (p.on, p.off)).collect();
            if !r.sum_e_prime_is_2e {
                return Err("sum of E_i' differs from 2E".into());
            }
            expect(parts, vec![(24, 24); 4])
        }),
        ("cuboid-min-e-intersection", |_| expect(cuboid_report().map_err(|e| e.to_string())?.min_e_intersection, 8)),
        ("cuboid-curve-inventory", |_| expect(cuboid_report().map_err(|e| e.to_string())?.curve_inventory.total, 92)),
        ("cuboid-noether-gap", |_| expect(noether_gap(&tower(cuboid_spec())?).map_err(|e| e.to_string())?.to_string(), "-48".into())),
        ("gencuboid-m3-n3-noether-gap", |_| {
            expect(noether_gap(&tower(generalized_cuboid_spec(3, 3))?).map_err(|e| e.to_string())?.to_string(), "-432".into())
        }),
        ("gencuboid-m3-n3-singular-points", |_| expect(sing_total(&tower(generalized_cuboid_spec(3, 3))?), 243)),
        ("cuboid-verdict", |_| {
            let v = verdict(&tower(cuboid_spec())?).map_err(|e| e.to_string())?;
            expect((v.kind, v.checks.vanishing_ok), (VerdictKind::Inconclusive, false))
        }),
        ("hyperbolic-sweep", |_| {
            let mut kinds = Vec::new();
            for m in 3..=5 {
                for n in 3..=5 {
                    kinds.push(verdict(&tower(generalized_cuboid_spec(m, n))?).map_err(|e| e.to_string())?.kind);
                }
            }
            expect(kinds, vec![VerdictKind::Hyperbolic; 9])
        }),
        ("lines15-singular-points", |_| expect(sing_total(&tower(tangent_lines_spec(15, 3).unwrap())?), 105)),
        ("lines15-chi", |_| {
            let t = tower(tangent_lines_spec(15, 3).unwrap())?;
            let rec = level_invariants(&t).map_err(|e| e.to_string())?[1].chi.clone();
            let push = chi_via_pushforward(&t).map_err(|e| e.to_string())?;
            expect((rec.to_string(), push.to_string()), ("43".into(), "43".into()))
        }),
        ("lines15-conic-genus", |_| {
            let t = tower(tangent_lines_spec(15, 3).unwrap())?;
            let c = trace_curve(&t, &CurveGeom::Conic, 1, CurveRole::Special).map_err(|e| e.to_string())?;
            expect((c.components, c.genus), (1, 13))
        }),
        ("lines15-verdict", |_| {
            let v = verdict(&tower(tangent_lines_spec(15, 3).unwrap())?).map_err(|e| e.to_string())?;
            let low = v.exceptional_locus.iter().filter(|e| e.genus == 0).count();
            expect((v.kind, low, v.exceptional_locus.len()), (VerdictKind::QuasiHyperbolic, 15, 15))
        }),
        ("weighted-plane-model", |_| {
            let e = weighted_tangent_hypersurface(15, 3).map_err(|e| e.to_string())?;
            expect((e.ambient(), validate_family(&e).valid), ("P(1,1,1,5)".to_string(), true))
        }),
        ("gencuboid-model", |_| {
            let e = generalized_cuboid_model(3, 3).map_err(|e| e.to_string())?;
            let t = tower(family_tower_spec(&e).map_err(|e| e.to_string())?)?;
            expect((e.ambient(), sing_total(&t)), ("P6".to_string(), 243))
        }),
        ("family-round-trips", |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut done = 0;
            while done < 50 {
                let n = rng.gen_range(4..=9);
                let p = rng.gen_range(0.0..1.0);
                let d: Vec<u64> = (0..n).map(|_| if rng.gen_bool(p) { 2 } else { rng.gen_range(3..=5) }).collect();
                let c = classify_multidegree(&d).map_err(|e| e.to_string())?;
                if c.primary() == FamilyKind::NotCovered {
                    continue;
                }
                for &k in &c.kinds {
                    let e = instantiate_family(k, &d).map_err(|e| format!("{k} {d:?}: {e}"))?;
                    let v = validate_family(&e);
                    if !v.valid {
                        return Err(format!("{k} {d:?}: {}", v.witnesses[0]));
                    }
                    let t = tower(family_tower_spec(&e).map_err(|e| e.to_string())?)?;
                    if !check_hypotheses(&t).all_ok() {
                        return Err(format!("{k} {d:?}: hypotheses fail"));
                    }
                }
                done += 1;
            }
            Ok(format!("{done} multidegrees"))
        }),
    ]
}

fn run_verify(seed: u64, out: OutputFormat) -> CliResult {
    let results: Vec<(&str, Result<String, String>)> = checks().into_par_iter().map(|(n, f)| (n, f(seed))).collect();
    let failed = results.iter().filter(|r| r.1.is_err()).count();
    let report = match out {
        OutputFormat::Json => {
            let rows: Vec<Value> = results
                .iter()
                .map(|(n, r)| match r {
                    Ok(d) => json!({"check": n, "status": "PASS", "detail": d}),
                    Err(d) => json!({"check": n, "status": "FAIL", "detail": d}),
                })
                .collect();
            pretty(&json!({"seed": seed, "checks": rows, "failed": failed}))
        }
        OutputFormat::Text => results
            .iter()
            .map(|(n, r)| match r {
                Ok(d) => format!("[PASS] {n}: {d}"),
                Err(d) => format!("[FAIL] {n}: {d}"),
            })
            .collect::<Vec<_>>()
            .join("\n"),
    };
    Ok((report, if failed == 0 { 0 } else { 3 }))
}

fn configure_threads() {
    if let Some(n) = std::env::var("HYPERSURF_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let out = cli.output;
    let result = match &cli.command {
        Command::Hj { m, q } => run_hj(*m, *q, out),
        Command::TowerCheck { spec } => run_tower_check(spec, out),
        Command::Invariants { spec } => run_invariants(spec, out),
        Command::Classify { degrees } => run_classify(degrees, out),
        Command::Generate { degrees, format, family } => run_generate(degrees, *format, family.as_deref()),
        Command::VerifyPaper { seed } => run_verify(*seed, out),
    };
    match result {
        Ok((report, code)) => {
            let mut stdout = std::io::stdout().lock();
            if writeln!(stdout, "{report}").is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
