use std::fmt::Write as _;
use std::path::Path;

use anyhow::anyhow;
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use clustercrypt::analysis::{
    dfs_paths, enumerate_exchange_graph, key_recovery_probability, path_count, report_csv, report_text,
    verify_seed_list_a3, AnalysisError, EnumerateOptions, ExchangeGraph, ProbabilityRow,
};
use clustercrypt::cluster::{DynkinSpec, DynkinType, ExchangeMatrix};
use clustercrypt::crypto::{self, CiphertextSeed, SecretKey, SystemParams};
use clustercrypt::fields::FieldParams;

use crate::args::{DecryptArgs, EncryptArgs, Format, GraphArgs, KeygenArgs, ParamsArgs, ProbeArgs};
use crate::output::{csv, read, write_atomic};
use crate::{Failure, EXIT_CONFIG};

/// Default `probe` set: every family, graphs of at most a few thousand vertices.
const PROBE_DEFAULT: [&str; 11] = ["A2", "A3", "A4", "B2", "B3", "C3", "D4", "D5", "E6", "F4", "G2"];

fn dynkin(s: &str) -> Result<DynkinType, Failure> {
    s.parse::<DynkinType>().map_err(Failure::config)
}

fn load_params(path: &Path) -> Result<SystemParams, Failure> {
    crypto::deserialize_params(read(path)?.trim()).map_err(|e| Failure::config(anyhow!("{}: {e}", path.display())))
}

fn load_key(path: &Path) -> Result<SecretKey, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| Failure::config(anyhow!("{}: {e}", path.display())))
}

fn matrix_json(b: &ExchangeMatrix) -> Value {
    json!(b.rows())
}

/// Multi-line matrix aligned under a 10-column label.
fn block(b: &ExchangeMatrix) -> String {
    b.to_string().trim_end().replace('\n', "\n          ")
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn params(a: ParamsArgs, format: Format) -> Result<String, Failure> {
    let ty = dynkin(&a.diagram)?;
    let field = match a.modulus {
        Some(f) => FieldParams::new(a.p, a.r, f),
        None => FieldParams::find_irreducible(a.p, a.r),
    }
    .map_err(Failure::config)?;
    let params = SystemParams::new(field, DynkinSpec::new(ty.family, ty.rank).map_err(Failure::config)?)?;
    let mut file = crypto::serialize_params(&params);
    file.push('\n');
    write_atomic(&a.out, &file)?;
    let f = params.field();
    Ok(match format {
        Format::Json => to_json(&json!({
            "p": f.p(), "r": f.r(), "f": f.modulus(), "order": f.order().to_string(),
            "diagram": ty.to_string(), "matrix": matrix_json(params.initial_matrix()),
        })),
        Format::Csv => csv(
            &["p", "r", "f", "order", "diagram"],
            &[vec![f.p().to_string(), f.r().to_string(), join(f.modulus()).replace(',', " "), f.order().to_string(), ty.to_string()]],
        ),
        Format::Text => format!(
            "field     GF({}^{}) modulus {:?}\norder     {}\ndiagram   {ty}\nmatrix    {}\n",
            f.p(),
            f.r(),
            f.modulus(),
            f.order(),
            block(params.initial_matrix())
        ),
    })
}

pub fn keygen(a: KeygenArgs, format: Format) -> Result<String, Failure> {
    let params = load_params(&a.params)?;
    let (seed, recorded) = match a.rng_seed {
        Some(s) => (s, false),
        None => (rand::random::<u64>(), true),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let key = crypto::keygen(&mut rng, params.initial_matrix(), a.length)?;
    let mut file = serde_json::to_string(&key).expect("json");
    file.push('\n');
    write_atomic(&a.out, &file)?;
    Ok(match format {
        Format::Json => to_json(&json!({ "key": key.to_flat(), "rng_seed": seed, "entropy": recorded })),
        Format::Csv => csv(&["k0", "seq", "rng_seed"], &[vec![key.k0.to_string(), join(&key.seq).replace(',', " "), seed.to_string()]]),
        Format::Text => format!("key       {key}\nrng-seed  {seed}{}\n", if recorded { " (entropy)" } else { "" }),
    })
}

fn ciphertext_ints(params: &SystemParams, ct: &CiphertextSeed) -> Vec<BigUint> {
    ct.values.iter().map(|v| params.field().element_to_int(v)).collect()
}

pub fn encrypt(a: EncryptArgs, format: Format) -> Result<String, Failure> {
    let params = load_params(&a.params)?;
    let key = load_key(&a.key)?;
    let messages = if !a.message.is_empty() && a.message.chars().all(|c| c.is_ascii_digit()) {
        let n: BigUint = a.message.parse().map_err(Failure::config)?;
        vec![params.encode_number(&n)?]
    } else {
        let letters: Vec<_> = a.message.chars().filter(|c| !c.is_whitespace()).collect();
        if letters.is_empty() {
            return Err(Failure::config(anyhow!("empty message")));
        }
        letters.into_iter().map(|c| params.encode_letter(c)).collect::<Result<_, _>>()?
    };
    let mut records = Vec::with_capacity(messages.len());
    for m in &messages {
        let ct = if a.reference_path { params.encrypt_reference(&key, m)? } else { params.encrypt(&key, m)? };
        records.push(ct);
    }
    let mut file = String::new();
    for ct in &records {
        file.push_str(&crypto::serialize(&params, ct));
        file.push('\n');
    }
    write_atomic(&a.out, &file)?;

    Ok(match format {
        Format::Json => to_json(&json!({
            "records": records.iter().map(|ct| json!({
                "values": ciphertext_ints(&params, ct).iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                "matrix": matrix_json(&ct.matrix),
            })).collect::<Vec<_>>()
        })),
        Format::Csv => {
            let rows = records
                .iter()
                .enumerate()
                .flat_map(|(i, ct)| {
                    ciphertext_ints(&params, ct)
                        .into_iter()
                        .enumerate()
                        .map(move |(j, v)| vec![i.to_string(), j.to_string(), v.to_string()])
                })
                .collect::<Vec<_>>();
            csv(&["record", "position", "value"], &rows)
        }
        Format::Text => {
            let mut out = String::new();
            for ct in &records {
                let _ = writeln!(out, "values    {}", join(ciphertext_ints(&params, ct)));
                let _ = writeln!(out, "matrix    {}", block(&ct.matrix));
            }
            out
        }
    })
}

pub fn decrypt(a: DecryptArgs, format: Format) -> Result<String, Failure> {
    let key = load_key(&a.key)?;
    let expected = a.params.as_deref().map(load_params).transpose()?;
    let text = read(&a.input)?;
    let mut decoded = Vec::new();
    for (line_no, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let (params, ct) =
            crypto::deserialize(line).map_err(|e| Failure::config(anyhow!("{} line {}: {e}", a.input.display(), line_no + 1)))?;
        if let Some(p) = &expected {
            if *p != params {
                return Err(Failure::config(anyhow!("ciphertext parameters differ from {}", a.params.as_ref().unwrap().display())));
            }
        }
        let m = params.decrypt(&key, &ct)?;
        decoded.push(params.decode(&m)?);
    }
    if decoded.is_empty() {
        return Err(Failure::config(anyhow!("{} holds no ciphertext records", a.input.display())));
    }
    Ok(match format {
        Format::Json => to_json(&json!({
            "records": decoded.iter().map(|d| json!({
                "value": d.value.to_string(),
                "letter": d.letter.map(String::from),
            })).collect::<Vec<_>>()
        })),
        Format::Csv => csv(
            &["record", "value", "letter"],
            &decoded
                .iter()
                .enumerate()
                .map(|(i, d)| vec![i.to_string(), d.value.to_string(), d.letter.map(String::from).unwrap_or_default()])
                .collect::<Vec<_>>(),
        ),
        Format::Text => {
            let mut out = String::new();
            for d in &decoded {
                match d.letter {
                    Some(c) => writeln!(out, "{} ({c})", d.value),
                    None => writeln!(out, "{}", d.value),
                }
                .expect("string write");
            }
            out
        }
    })
}

fn analysis_failure(e: AnalysisError) -> Failure {
    Failure::new(EXIT_CONFIG, e)
}

fn enumerate(ty: DynkinType, budget: Option<usize>, symbolic: bool) -> Result<ExchangeGraph, Failure> {
    let b = DynkinSpec::new(ty.family, ty.rank).and_then(|s| s.exchange_matrix()).map_err(Failure::config)?;
    let mut opts = EnumerateOptions { symbolic, ..EnumerateOptions::default() };
    if let Some(budget) = budget {
        opts.budget = budget;
    }
    enumerate_exchange_graph(&b, &opts).map_err(analysis_failure)
}

pub fn graph(a: GraphArgs, format: Format) -> Result<String, Failure> {
    let ty = dynkin(&a.diagram)?;
    let g = enumerate(ty, a.budget, a.certify || a.seed_list)?;
    let mut fields: Vec<(&str, Value)> = vec![
        ("diagram", json!(ty.to_string())),
        ("vertices", json!(g.vertex_count())),
        ("edges", json!(g.edge_count())),
        ("regular", json!(g.is_regular())),
        ("connected", json!(g.is_connected())),
        ("cluster_variables", json!(g.cluster_variables().len())),
        ("fingerprint_seed", json!(format!("{:#x}", g.fingerprint_seed()))),
    ];
    if a.certify {
        let checked = g.certify_fingerprints().map_err(analysis_failure)?;
        fields.push(("certified_pairs", json!(checked)));
    }
    if a.seed_list {
        let report = verify_seed_list_a3(&g).map_err(analysis_failure)?;
        fields.push(("seed_list", json!("bijection")));
        fields.push(("matrix_disagreements", json!(report.matrix_disagreements())));
    }
    if let Some(pc) = &a.path_count {
        let t = u32::try_from(pc[2]).map_err(Failure::config)?;
        let count = path_count(&g, pc[0] as usize, pc[1] as usize, t).map_err(analysis_failure)?;
        fields.push(("path_count", json!(count.to_string())));
    }
    if let Some(d) = &a.dfs {
        let found = dfs_paths(&g, d[0], d[1], a.max_len, a.max_paths).map_err(analysis_failure)?;
        fields.push(("dfs_paths", json!(found.paths.len())));
        fields.push(("dfs_truncated", json!(found.truncated)));
        if format == Format::Json {
            fields.push(("paths", json!(found.paths)));
        }
    }
    Ok(match format {
        Format::Json => to_json(&Value::Object(fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect())),
        Format::Csv => {
            let row = fields.iter().map(|(_, v)| plain(v)).collect::<Vec<_>>();
            csv(&fields.iter().map(|(k, _)| *k).collect::<Vec<_>>(), &[row])
        }
        Format::Text => {
            let mut out = String::new();
            for (k, v) in &fields {
                let _ = writeln!(out, "{k:<22}{}", plain(v));
            }
            out
        }
    })
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) => xs.iter().map(plain).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

pub fn probe(a: ProbeArgs, format: Format) -> Result<String, Failure> {
    let names: Vec<String> =
        if a.diagrams.is_empty() { PROBE_DEFAULT.iter().map(|s| s.to_string()).collect() } else { a.diagrams.clone() };
    let mut rows: Vec<ProbabilityRow> = Vec::new();
    for name in &names {
        let ty = dynkin(name)?;
        let g = if a.no_enumerate { None } else { Some(enumerate(ty, a.budget, false)?) };
        rows.push(key_recovery_probability(ty.family, ty.rank, g.as_ref()).map_err(analysis_failure)?);
    }
    Ok(match format {
        Format::Csv => report_csv(&rows),
        Format::Text => report_text(&rows),
        Format::Json => to_json(&json!(rows
            .iter()
            .map(|r| json!({
                "diagram": r.dynkin.to_string(),
                "nc_enumerated": r.nc_enumerated,
                "nc_closed_form": r.nc_closed_form().map(|q| q.to_string()),
                "labeled_seeds": r.labeled_seeds.as_ref().map(|s| s.to_string()),
                "probability": r.probability.as_ref().map(|q| q.to_string()),
                "closed_form": r.closed_form.as_ref().map(|c| json!({
                    "formula": c.formula,
                    "value": format!("{}/{}", c.numerator, c.denominator),
                })),
                "match": r.matches,
                "published": r.published.as_ref().map(|p| json!({ "label": p.label, "value": p.value })),
                "fingerprint_seed": r.fingerprint_seed,
                "flags": r.flags,
                "notes": r.notes,
            }))
            .collect::<Vec<_>>())),
    })
}
