use std::collections::{BTreeSet, VecDeque};
use std::str::FromStr;
use std::time::Instant;

use exact_arith::{ArithError, Fp, Poly, Rational, Ring};
use gcs_engine::{seed_from_json, ExtendedSeed, GcsError};
use model_seeds::{symbolic_band, yz_report, YzReport};
use serde_json::json;

use crate::cli::{RingSel, RunConfig};
use crate::report::{Check, Reporter};
use crate::rings::{random_band_in, Sample};
use crate::seeds::file_ring;
use crate::verify::trial_rng;
use crate::HarnessError;

pub const SYMBOLIC_YZ_N: usize = 6;
pub const MAX_ORBIT_DEPTH: usize = 8;
pub const MAX_ORBIT_SEEDS: usize = 100_000;

/// Points used for a fingerprint run.
const FINGERPRINT_POINTS: usize = 3;

pub fn yz(cfg: &RunConfig, rep: &mut Reporter) -> Result<(), HarnessError> {
    let n = cfg.n.unwrap_or(4);
    if n < 3 {
        return Err(HarnessError::Config(format!("yz needs n >= 3, got {n}")));
    }
    let start = Instant::now();
    let (report, mode) = match cfg.ring {
        RingSel::Symbolic => {
            if n > SYMBOLIC_YZ_N {
                return Err(HarnessError::Config(format!("symbolic yz is capped at n = {SYMBOLIC_YZ_N}, got {n}")));
            }
            (yz_report(n, &[symbolic_band(2, n)])?, "symbolic".to_string())
        }
        RingSel::PrimeField => (fingerprint::<Fp>(n, cfg.seed)?, format!("{FINGERPRINT_POINTS}-point fingerprint")),
        RingSel::Rational => (fingerprint::<Rational>(n, cfg.seed)?, format!("{FINGERPRINT_POINTS}-point fingerprint")),
    };
    emit_yz(n, &report, &mode, rep, start);
    Ok(())
}

fn fingerprint<F: Sample>(n: usize, seed: u64) -> Result<YzReport, HarnessError> {
    let mut rng = trial_rng(seed, 0);
    let bands: Vec<_> = (0..FINGERPRINT_POINTS).map(|_| random_band_in::<F>(2, n, &mut rng)).collect();
    Ok(yz_report(n, &bands)?)
}

fn emit_yz(n: usize, r: &YzReport, mode: &str, rep: &mut Reporter, start: Instant) {
    // minors carried by the initial seed are listed in the summary only
    for (step, (cycle, label, hit)) in r.trace.iter().enumerate() {
        rep.record(json!({
            "check": "yz-step",
            "step": step,
            "cycle": cycle,
            "label": label,
            "minor": hit.map(|(i, j)| format!("x[{i},{j}]")),
            "pass": hit.is_some(),
        }));
    }
    let recovered: Vec<String> = r.recovered.iter().map(|(i, j)| format!("x[{i},{j}]")).collect();
    rep.check(
        Check {
            check: "yz",
            instance: format!("n={n} {mode}"),
            trial: None,
            residual: format!(
                "{} of {} minors recovered, {} unmatched, cycles restore {:?}",
                recovered.len(),
                r.minor_count,
                r.unmatched,
                r.cycles_restore
            ),
            pass: r.pass && recovered.len() == n * (n - 1),
            retries: 0,
        },
        start.elapsed(),
    );
    rep.record(json!({ "check": "yz-minors", "recovered": recovered, "collected": r.collected }));
}

pub fn orbit(cfg: &RunConfig, rep: &mut Reporter) -> Result<(), HarnessError> {
    if cfg.depth > MAX_ORBIT_DEPTH {
        return Err(HarnessError::Config(format!("orbit depth is capped at {MAX_ORBIT_DEPTH}")));
    }
    let path = cfg
        .input
        .as_ref()
        .ok_or_else(|| HarnessError::Config("orbit needs --in <seed file>".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| HarnessError::Config(format!("cannot read {}: {e}", path.display())))?;
    let v: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| HarnessError::Config(format!("{} is not JSON: {e}", path.display())))?;
    match file_ring(&v) {
        RingSel::PrimeField => orbit_with::<Fp>(&v, cfg, rep),
        RingSel::Rational => orbit_with::<Rational>(&v, cfg, rep),
        RingSel::Symbolic => orbit_with::<Poly<Rational>>(&v, cfg, rep),
    }
}

fn same_seed<T: Ring>(a: &ExtendedSeed<T>, b: &ExtendedSeed<T>) -> bool {
    a.values == b.values && a.strings == b.strings && a.quiver.same_shape(&b.quiver)
}

/// Breadth-first walk of the exchange graph to `--depth`, never undoing the
/// last step. Every edge walked is also checked to be an involution.
fn orbit_with<T>(v: &serde_json::Value, cfg: &RunConfig, rep: &mut Reporter) -> Result<(), HarnessError>
where
    T: Ring + FromStr<Err = ArithError>,
{
    let start = Instant::now();
    let root: ExtendedSeed<T> = seed_from_json(v)?;
    let mutable: Vec<usize> = (0..root.quiver.len()).filter(|&i| !root.quiver.is_frozen(i)).collect();
    let mut vars: BTreeSet<String> = mutable.iter().map(|&i| root.values[i].to_string()).collect();
    let mut queue = VecDeque::from([(root, None::<usize>, 0usize)]);
    let (mut visited, mut edges, mut broken, mut blocked) = (1usize, 0usize, 0usize, 0usize);
    while let Some((seed, last, depth)) = queue.pop_front() {
        if depth == cfg.depth {
            continue;
        }
        for &k in &mutable {
            if Some(k) == last {
                continue;
            }
            let next = match seed.mutate(k) {
                Ok(s) => s,
                Err(GcsError::NotDivisible(_) | GcsError::ZeroClusterValue(_)) => {
                    blocked += 1;
                    continue;
                }
                Err(e) => return Err(e.into()),
            };
            edges += 1;
            match next.mutate(k) {
                Ok(back) if same_seed(&back, &seed) => {}
                _ => broken += 1,
            }
            vars.insert(next.values[k].to_string());
            if visited >= MAX_ORBIT_SEEDS {
                return Err(HarnessError::Config(format!(
                    "orbit exceeded {MAX_ORBIT_SEEDS} seeds; lower --depth"
                )));
            }
            visited += 1;
            queue.push_back((next, Some(k), depth + 1));
        }
    }
    rep.record(json!({
        "check": "orbit",
        "depth": cfg.depth,
        "seeds_visited": visited,
        "mutations": edges,
        "blocked": blocked,
        "distinct_variables": vars.len(),
        "involution_failures": broken,
        "pass": broken == 0 && blocked == 0,
        "elapsed_ms": start.elapsed().as_secs_f64() * 1e3,
    }));
    Ok(())
}
