use std::fs;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use exact_arith::{ArithError, Field, Fp, FromRational, Poly, Rational, Ring};
use gcs_engine::{seed_from_json, seed_to_json, to_dot, ExtendedSeed, GcsError};
use matrix_core::{matrix_from_json, matrix_to_json, RingMatrix};
use model_seeds::{build_sigma_band, build_sigma_double, symbolic_band, symbolic_double, verify_band_identity, LabeledSeed};
use serde_json::{json, Value};
use staircase_core::{phi1_star, validate_shape, Derived};

use crate::cli::{RingSel, RunConfig, SeedKind};
use crate::report::{Check, Reporter};
use crate::rings::{random_band_in, random_matrix, Sample};
use crate::verify::trial_rng;
use crate::HarnessError;

pub const SYMBOLIC_DOUBLE_N: usize = 4;
/// (k+1)·n, the number of band variables
pub const SYMBOLIC_BAND_VARS: usize = 20;

enum Source<T> {
    Double(RingMatrix<T>, RingMatrix<T>),
    Band(RingMatrix<T>),
}

fn params(kind: SeedKind, cfg: &RunConfig) -> Result<(usize, usize), HarnessError> {
    let n = cfg.n.unwrap_or(4);
    match kind {
        SeedKind::Double => {
            if n < 3 {
                return Err(HarnessError::Config(format!("double needs n >= 3, got {n}")));
            }
            Ok((n, n))
        }
        SeedKind::Band => {
            let k = cfg.k.unwrap_or(2);
            if k < 2 || k >= n {
                return Err(HarnessError::Config(format!("band needs 2 <= k < n, got k = {k}, n = {n}")));
            }
            Ok((n, k))
        }
    }
}

fn random_source<F: Sample>(kind: SeedKind, n: usize, k: usize, seed: u64) -> Source<F> {
    let mut rng = trial_rng(seed, 0);
    match kind {
        SeedKind::Double => {
            let x = random_matrix(n, n, &mut rng);
            let y = random_matrix(n, n, &mut rng);
            Source::Double(x, y)
        }
        SeedKind::Band => Source::Band(random_band_in(k, n, &mut rng)),
    }
}

pub fn build(kind: SeedKind, cfg: &RunConfig, rep: &mut Reporter) -> Result<(), HarnessError> {
    let (n, k) = params(kind, cfg)?;
    let out = cfg
        .out
        .as_deref()
        .ok_or_else(|| HarnessError::Config("seed build needs -o <file>".into()))?;
    match cfg.ring {
        RingSel::PrimeField => write_seed(n, k, random_source::<Fp>(kind, n, k, cfg.seed), cfg, out, rep),
        RingSel::Rational => write_seed(n, k, random_source::<Rational>(kind, n, k, cfg.seed), cfg, out, rep),
        RingSel::Symbolic => {
            let src = match kind {
                SeedKind::Double => {
                    if n > SYMBOLIC_DOUBLE_N {
                        return Err(HarnessError::Config(format!(
                            "symbolic double is capped at n = {SYMBOLIC_DOUBLE_N}, got {n}"
                        )));
                    }
                    let (x, y) = symbolic_double(n);
                    Source::Double(x, y)
                }
                SeedKind::Band => {
                    if (k + 1) * n > SYMBOLIC_BAND_VARS {
                        return Err(HarnessError::Config(format!(
                            "symbolic band is capped at (k+1)n = {SYMBOLIC_BAND_VARS}, got {}",
                            (k + 1) * n
                        )));
                    }
                    Source::Band(symbolic_band(k, n))
                }
            };
            write_seed::<Poly<Rational>>(n, k, src, cfg, out, rep)
        }
    }
}

fn write_seed<T: FromRational>(
    n: usize,
    k: usize,
    src: Source<T>,
    cfg: &RunConfig,
    out: &Path,
    rep: &mut Reporter,
) -> Result<(), HarnessError> {
    let start = Instant::now();
    let (ls, source, kind_name): (LabeledSeed<T>, Value, &str) = match &src {
        Source::Double(x, y) => (
            build_sigma_double(n, x, y)?,
            json!({ "X": matrix_to_json(x), "Y": matrix_to_json(y) }),
            "double",
        ),
        Source::Band(a) => (build_sigma_band(k, n, a)?, json!({ "A": matrix_to_json(a) }), "band"),
    };
    let mut v = seed_to_json(&ls.seed);
    v["kind"] = json!(kind_name);
    v["ring"] = json!(cfg.ring.name());
    v["params"] = json!({ "n": n, "k": k });
    v["special"] = json!(ls.special);
    v["source"] = source;
    write_json(out, &v)?;
    if let Some(dot) = &cfg.dot {
        fs::write(dot, to_dot(&ls.seed.quiver))?;
    }
    rep.record(json!({
        "check": "seed-build",
        "kind": kind_name,
        "n": n,
        "k": k,
        "seed": cfg.seed,
        "out": out.display().to_string(),
        "elapsed_ms": start.elapsed().as_secs_f64() * 1e3,
    }));
    rep.record(summary_record(&ls.seed, Some(ls.special)));
    Ok(())
}

fn write_json(path: &Path, v: &Value) -> Result<(), HarnessError> {
    let mut text = serde_json::to_string_pretty(v)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

fn summary_record<T: Ring>(seed: &ExtendedSeed<T>, special: Option<usize>) -> Value {
    let q = &seed.quiver;
    let specials: Vec<Value> = q
        .special()
        .iter()
        .map(|&v| json!({ "vertex": v, "label": q.vertex(v).label, "multiplicity": q.mult(v) }))
        .collect();
    json!({
        "check": "seed-shape",
        "vertices": q.len(),
        "frozen": q.frozen_count(),
        "isolated": q.isolated().len(),
        "edges": q.edges().map(|(_, _, c)| c as usize).sum::<usize>(),
        "special": specials,
        "designated_special": special,
    })
}

fn load(cfg: &RunConfig, positional: &Option<std::path::PathBuf>) -> Result<Value, HarnessError> {
    let path = positional
        .as_ref()
        .or(cfg.input.as_ref())
        .ok_or_else(|| HarnessError::Config("no seed file given (positional or --in)".into()))?;
    let text = fs::read_to_string(path)
        .map_err(|e| HarnessError::Config(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| HarnessError::Config(format!("{} is not JSON: {e}", path.display())))
}

/// The ring a seed file lives in: its "ring" field, else guessed from the
/// first value.
pub(crate) fn file_ring(v: &Value) -> RingSel {
    match v["ring"].as_str() {
        Some("rational") => RingSel::Rational,
        Some("prime-field") => RingSel::PrimeField,
        Some("symbolic") => RingSel::Symbolic,
        _ => {
            let first = v["values"][0].as_str().unwrap_or("");
            if first.contains("mod") {
                RingSel::PrimeField
            } else if first.contains('x') {
                RingSel::Symbolic
            } else {
                RingSel::Rational
            }
        }
    }
}

pub fn show(cfg: &RunConfig, positional: &Option<std::path::PathBuf>, rep: &mut Reporter) -> Result<(), HarnessError> {
    let v = load(cfg, positional)?;
    match file_ring(&v) {
        RingSel::PrimeField => show_with::<Fp>(&v, cfg, rep),
        RingSel::Rational => show_with::<Rational>(&v, cfg, rep),
        RingSel::Symbolic => show_with::<Poly<Rational>>(&v, cfg, rep),
    }
}

fn show_with<T>(v: &Value, cfg: &RunConfig, rep: &mut Reporter) -> Result<(), HarnessError>
where
    T: Ring + FromStr<Err = ArithError>,
{
    let seed: ExtendedSeed<T> = seed_from_json(v)?;
    if let Some(dot) = &cfg.dot {
        fs::write(dot, to_dot(&seed.quiver))?;
    }
    let mut r = summary_record(&seed, v["special"].as_u64().map(|s| s as usize));
    r["kind"] = v["kind"].clone();
    r["two_cycles"] = json!(seed.quiver.has_two_cycles());
    rep.record(r);
    Ok(())
}

fn resolve<T: Ring>(seed: &ExtendedSeed<T>, at: &str) -> Result<usize, HarnessError> {
    let q = &seed.quiver;
    let id = match at.parse::<usize>() {
        Ok(id) => id,
        Err(_) => q
            .find(at)
            .ok_or_else(|| HarnessError::Config(format!("no vertex labelled `{at}`")))?,
    };
    if id >= q.len() {
        return Err(HarnessError::Config(format!("vertex {id} does not exist ({} vertices)", q.len())));
    }
    if q.is_frozen(id) {
        return Err(HarnessError::Config(format!("vertex {id} ({}) is frozen", q.vertex(id).label)));
    }
    Ok(id)
}

pub fn mutate(
    at: &[String],
    cfg: &RunConfig,
    positional: &Option<std::path::PathBuf>,
    rep: &mut Reporter,
) -> Result<(), HarnessError> {
    let v = load(cfg, positional)?;
    match file_ring(&v) {
        RingSel::PrimeField => mutate_with::<Fp>(&v, at, cfg, rep),
        RingSel::Rational => mutate_with::<Rational>(&v, at, cfg, rep),
        RingSel::Symbolic => mutate_with::<Poly<Rational>>(&v, at, cfg, rep),
    }
}

fn mutate_with<T>(v: &Value, at: &[String], cfg: &RunConfig, rep: &mut Reporter) -> Result<(), HarnessError>
where
    T: Ring + FromStr<Err = ArithError>,
{
    let mut seed: ExtendedSeed<T> = seed_from_json(v)?;
    let ids = at.iter().map(|a| resolve(&seed, a)).collect::<Result<Vec<_>, _>>()?;
    for &k in &ids {
        let start = Instant::now();
        let label = seed.quiver.vertex(k).label.clone();
        match seed.mutate(k) {
            Ok(next) => {
                rep.record(json!({
                    "check": "mutate",
                    "vertex": k,
                    "label": label,
                    "multiplicity": seed.quiver.mult(k),
                    "value": next.values[k].to_string(),
                    "pass": true,
                    "elapsed_ms": start.elapsed().as_secs_f64() * 1e3,
                }));
                seed = next;
            }
            Err(e @ (GcsError::NotDivisible(_) | GcsError::ZeroClusterValue(_))) => {
                rep.record(json!({
                    "check": "mutate",
                    "vertex": k,
                    "label": label,
                    "error": e.to_string(),
                    "pass": false,
                    "elapsed_ms": start.elapsed().as_secs_f64() * 1e3,
                }));
                return Ok(());
            }
            Err(e) => return Err(e.into()),
        }
    }
    let special = v["special"].as_u64().map(|s| s as usize);
    let history: Vec<Value> = v["mutations"].as_array().cloned().unwrap_or_default();
    // the source matrices describe the initial seed only
    if history.is_empty() && ids.len() == 1 && Some(ids[0]) == special {
        let start = Instant::now();
        let expect = match file_ring(v) {
            RingSel::PrimeField => expected_star::<Fp>(v)?,
            RingSel::Rational => expected_star::<Rational>(v)?,
            RingSel::Symbolic => None,
        };
        if let Some(expect) = expect {
            let got = seed.values[ids[0]].to_string();
            rep.check(
                Check {
                    check: "phi1-star",
                    instance: format!("{} special vertex {}", v["kind"].as_str().unwrap_or("?"), ids[0]),
                    trial: None,
                    residual: if got == expect { "0".into() } else { format!("{got} vs {expect}") },
                    pass: got == expect,
                    retries: 0,
                },
                start.elapsed(),
            );
        }
    }
    if let Some(out) = &cfg.out {
        let mut w = seed_to_json(&seed);
        for key in ["kind", "ring", "params", "special", "source"] {
            if !v[key].is_null() {
                w[key] = v[key].clone();
            }
        }
        w["mutations"] = json!(history.into_iter().chain(ids.iter().map(|&k| json!(k))).collect::<Vec<_>>());
        write_json(out, &w)?;
    }
    if let Some(dot) = &cfg.dot {
        fs::write(dot, to_dot(&seed.quiver))?;
    }
    Ok(())
}

/// φ₁* (double) or φ̃₁* (band) recomputed from the source matrices stored
/// with the seed; None when the file carries no source.
fn expected_star<F>(v: &Value) -> Result<Option<String>, HarnessError>
where
    F: Field + FromRational + FromStr<Err = ArithError>,
{
    let src = &v["source"];
    let n = v["params"]["n"].as_u64().map(|x| x as usize);
    let k = v["params"]["k"].as_u64().map(|x| x as usize);
    let (Some(n), Some(k)) = (n, k) else { return Ok(None) };
    match v["kind"].as_str() {
        Some("double") if !src["X"].is_null() => {
            let x: RingMatrix<F> = matrix_from_json(&src["X"])?;
            let y: RingMatrix<F> = matrix_from_json(&src["Y"])?;
            let s = validate_shape(n, n, 0, x, y)?;
            Ok(Some(phi1_star(&s, &Derived::new(&s)?)?.to_string()))
        }
        Some("band") if !src["A"].is_null() => {
            let a: RingMatrix<F> = matrix_from_json(&src["A"])?;
            Ok(Some(verify_band_identity(k, n, &a)?.phi1_tilde_star.to_string()))
        }
        _ => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_is_read_or_guessed() {
        assert_eq!(file_ring(&json!({ "ring": "rational", "values": ["1 mod 7"] })), RingSel::Rational);
        assert_eq!(file_ring(&json!({ "values": ["3 mod 7"] })), RingSel::PrimeField);
        assert_eq!(file_ring(&json!({ "values": ["x0*x3 - 2"] })), RingSel::Symbolic);
        assert_eq!(file_ring(&json!({ "values": ["-3/4"] })), RingSel::Rational);
    }
}
