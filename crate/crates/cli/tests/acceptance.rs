//! Acceptance suite: one pass/fail line per criterion, non-zero exit if any fails.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;
use traceforge_verify::{run_check, CheckConfig, CheckId, Status};

const BIN: &str = env!("CARGO_BIN_EXE_traceforge");

struct Run {
    code: i32,
    doc: Value,
    elapsed: Duration,
}

fn traceforge(args: &[&str], out: &Path) -> Run {
    let start = Instant::now();
    let status = Command::new(BIN)
        .args(args)
        .args(["--format", "json", "--out"])
        .arg(out)
        .env_remove("TRACEFORGE_SEED")
        .stderr(std::process::Stdio::null())
        .status()
        .expect("binary runs");
    let elapsed = start.elapsed();
    let doc = std::fs::read_to_string(out).ok().and_then(|s| serde_json::from_str(&s).ok()).unwrap_or(Value::Null);
    Run { code: status.code().unwrap_or(-1), doc, elapsed }
}

fn report<'a>(doc: &'a Value, id: &str) -> Option<&'a Value> {
    doc["reports"].as_array()?.iter().find(|r| r["id"] == id)
}

fn worst(r: &Value) -> f64 {
    r["worst_slack"].as_f64().unwrap_or(f64::NEG_INFINITY)
}

fn min_config_trials(r: &Value) -> u64 {
    r["configs"].as_array().map_or(0, |cs| cs.iter().filter_map(|c| c["trials"].as_u64()).min().unwrap_or(0))
}

fn strip_wall_time(text: &str) -> String {
    text.lines().filter(|l| !l.trim_start().starts_with("\"wall_time\"")).collect::<Vec<_>>().join("\n")
}

/// Every listed check passes with worst slack at least `floor` and at least `trials` per configuration.
fn floors(doc: &Value, ids: &[&str], floor: f64, trials: u64) -> Result<String, String> {
    let mut bad = Vec::new();
    let mut lowest = f64::INFINITY;
    for id in ids {
        match report(doc, id) {
            Some(r) if r["status"] == "pass" && worst(r) >= floor && min_config_trials(r) >= trials => lowest = lowest.min(worst(r)),
            Some(r) => bad.push(format!("{id}: {} worst {:e} trials {}", r["status"], worst(r), min_config_trials(r))),
            None => bad.push(format!("{id}: missing")),
        }
    }
    if bad.is_empty() {
        Ok(format!("{} checks, lowest worst slack {lowest:.3e}", ids.len()))
    } else {
        Err(bad.join("; "))
    }
}

fn identity_checks(doc: &Value) -> Result<String, String> {
    // (id, tolerance, trials per configuration, required dims)
    let rows: [(&str, f64, u64, Option<&[u64]>); 6] = [
        ("uhlmann_average", 1e-12, 1, None),
        ("stinespring_roundtrip", 1e-9, 50, None),
        ("purification", 1e-10, 1, None),
        ("donald_identity", 1e-9, 200, Some(&[4])),
        ("wy_block_identity", 1e-10, 1, None),
        ("pure_marginals", 1e-9, 100, None),
    ];
    let mut bad = Vec::new();
    for (id, tol, trials, dims) in rows {
        let Some(r) = report(doc, id) else {
            bad.push(format!("{id}: missing"));
            continue;
        };
        let has_dims = dims.is_none_or(|d| {
            r["configs"].as_array().is_some_and(|cs| cs.iter().any(|c| c["dims"].as_array().is_some_and(|x| x.iter().map(|v| v.as_u64().unwrap_or(0)).eq(d.iter().copied()))))
        });
        let ok = r["status"] == "pass" && r["tol"].as_f64().is_some_and(|t| t <= tol) && min_config_trials(r) >= trials && has_dims;
        if !ok {
            bad.push(format!("{id}: {} tol {} trials {}", r["status"], r["tol"], min_config_trials(r)));
        }
    }
    // Full matrix-unit sweeps for every m, n ≤ 4: trial 0 runs over all units of M_{mn}.
    for m in 1..=4 {
        for n in 1..=4 {
            let cfg = CheckConfig { dims: Some(vec![m, n]), trials: Some(1), ..CheckConfig::with_seed(42) };
            match run_check(CheckId::UhlmannAverage, &cfg) {
                Ok(r) if r.status == Status::Pass => {}
                Ok(r) => bad.push(format!("uhlmann m={m} n={n}: {}", r.status)),
                Err(e) => bad.push(format!("uhlmann m={m} n={n}: {e}")),
            }
        }
    }
    if bad.is_empty() {
        Ok("six identities within tolerance; Uhlmann averaging exact on matrix units for all m, n ≤ 4".into())
    } else {
        Err(bad.join("; "))
    }
}

fn counterexamples(doc: &Value, dir: &Path) -> Result<String, String> {
    let mut bad = Vec::new();
    let mut notes = Vec::new();
    let ando = traceforge(&["search", "ando_mono_false", "--dims", "2", "--seed", "42"], &dir.join("ando.json"));
    match report(&ando.doc, "ando_mono_false") {
        Some(r) if ando.code == 0 && worst(r) <= -0.05 => notes.push(format!("ando magnitude {:.3}", -worst(r))),
        _ => bad.push(format!("ando_mono_false: exit {}", ando.code)),
    }
    match report(doc, "choi_separation") {
        Some(r) if r["status"] == "fail" => {
            let w = &r["witness"];
            let eig = w["eigenvalue"].as_f64().unwrap_or(0.0);
            let schwarz = w["schwarz_worst_slack"].as_f64().unwrap_or(f64::NEG_INFINITY);
            if eig <= -1e-3 && schwarz >= -1e-10 && min_config_trials(r) >= 1000 {
                notes.push(format!("choi eigenvalue {eig:.3e}, Schwarz slack {schwarz:.3e}"));
            } else {
                bad.push(format!("choi_separation: eigenvalue {eig} schwarz {schwarz}"));
            }
        }
        _ => bad.push("choi_separation: not a verified failure".into()),
    }
    for id in ["minkowski_three_p_gt_2", "carlen_lieb_p_gt_2"] {
        let s = traceforge(&["search", id, "--budget", "100000", "--seed", "42"], &dir.join(format!("{id}.json")));
        match (s.code, report(&s.doc, id)) {
            (0, Some(r)) => notes.push(format!("{id} after {} evaluations", r["trials_run"])),
            (code, _) => bad.push(format!("{id}: exit {code}")),
        }
    }
    if bad.is_empty() {
        Ok(notes.join("; "))
    } else {
        Err(bad.join("; "))
    }
}

fn determinism(dir: &Path) -> Result<String, String> {
    let args = ["run", "--all", "--seed", "42"];
    let one = traceforge(&[&args[..], &["--jobs", "1"]].concat(), &dir.join("jobs1.json"));
    let four = traceforge(&[&args[..], &["--jobs", "4"]].concat(), &dir.join("jobs4.json"));
    let read = |p: &str| std::fs::read_to_string(dir.join(p)).map(|s| strip_wall_time(&s)).unwrap_or_default();
    if one.code == four.code && !read("jobs1.json").is_empty() && read("jobs1.json") == read("jobs4.json") {
        Ok("--jobs 1 and --jobs 4 bodies byte-identical".into())
    } else {
        Err("report bodies differ between --jobs 1 and --jobs 4".into())
    }
}

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    let full = traceforge(&["run", "--all", "--seed", "42", "--jobs", "1"], &dir.path().join("full.json"));
    let doc = &full.doc;

    let results: Vec<(&str, Result<String, String>)> = vec![
        (
            "1 full suite exits 0 in under 3 minutes single-threaded",
            if full.code == 0 && full.elapsed < Duration::from_secs(180) {
                Ok(format!("{:.1}s", full.elapsed.as_secs_f64()))
            } else {
                Err(format!("exit {} after {:.1}s", full.code, full.elapsed.as_secs_f64()))
            },
        ),
        (
            "2 inequality slack floors ≥ −1e-8",
            floors(
                doc,
                &[
                    "ssa",
                    "dpi",
                    "klein",
                    "golden_thompson",
                    "peierls_bogoliubov",
                    "triple_matrix",
                    "lieb_ruskai",
                    "kadison_schwarz",
                    "kiefer",
                    "araki_lieb_triangle",
                    "extended_ssa",
                    "weak_ssa",
                    "minkowski_two",
                    "hiai_petz_2",
                    "hiai_petz_3",
                    "perspective_monotone",
                    "bs_dpi",
                    "sandwiched_dpi",
                    "metric_monotone",
                ],
                -1e-8,
                1,
            ),
        ),
        (
            "3 convexity midpoint checks ≥ −1e-8 over ≥ 200 trials",
            floors(
                doc,
                &[
                    "lieb_concavity",
                    "lieb_neg_powers_convexity",
                    "map_convexity",
                    "rel_entropy_joint_convexity",
                    "ando_convexity",
                    "epstein",
                    "carlen_lieb",
                    "lieb_explog",
                    "wy_skew_convexity",
                    "gf_convexity",
                    "hiai_petz_4",
                    "hansen_ando_hiai",
                    "cond_entropy_convexity",
                    "cp_composed",
                ],
                -1e-8,
                200,
            ),
        ),
        ("4 exact identities", identity_checks(doc)),
        ("5 counterexample reproductions", counterexamples(doc, dir.path())),
        (
            "6 derivative and limit checks",
            floors(doc, &["relent_limit", "log_derivatives", "renyi_limit"], -1.0, 50),
        ),
        ("7 commuting-instance oracles within 1e-10", floors(doc, &["commuting_oracles"], -1.0, 100)),
        ("8 determinism across --jobs", determinism(dir.path())),
    ];

    let mut failed = 0;
    for (name, result) in &results {
        match result {
            Ok(note) => println!("PASS criterion {name}: {note}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
