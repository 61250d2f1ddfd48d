use std::collections::HashMap;

use anyhow::anyhow;
use num_bigint::{BigUint, RandBigInt};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use clustercrypt::analysis::{
    enumerate_exchange_graph, key_recovery_probability, EnumerateOptions, FLAG_CLOSED_FORM_MISMATCH,
};
use clustercrypt::cluster::{DynkinSpec, ExchangeMatrix, Family, NumericSeed};
use clustercrypt::crypto::{self, CryptoError, SecretKey, SystemParams};
use clustercrypt::fields::FieldParams;

use crate::args::{Format, SelftestArgs};
use crate::output::csv;
use crate::{Failure, EXIT_SELFTEST};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ints(params: &SystemParams, values: &[clustercrypt::fields::FieldElement]) -> Vec<String> {
    values.iter().map(|v| params.field().element_to_int(v).to_string()).collect()
}

fn example1() -> SystemParams {
    let f = FieldParams::new(2, 5, vec![1, 0, 1, 0, 0, 1]).expect("irreducible");
    SystemParams::new(f, DynkinSpec::new(Family::A, 5).expect("A5")).expect("params")
}

fn example2() -> SystemParams {
    let f = FieldParams::new(101, 7, vec![46, 0, 1, 1, 0, 74, 0, 1]).expect("irreducible");
    SystemParams::new(f, DynkinSpec::new(Family::D, 7).expect("D7")).expect("params")
}

fn matrix(rows: &[&[i64]]) -> ExchangeMatrix {
    ExchangeMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).expect("skew")
}

fn check_example1() -> Check {
    let params = example1();
    let key = SecretKey::from_flat(&[0, 1, 4, 0, 3, 1]).expect("key");
    let m = params.encode_letter('F').map_err(|e| e.to_string())?;
    let ct = params.encrypt(&key, &m).map_err(|e| e.to_string())?;
    let got = ints(&params, &ct.values);
    ensure(got == ["11", "18", "4", "7", "25"], || format!("values {}", got.join(" ")))?;
    let expected = matrix(&[&[0, -1, 1, 0, 0], &[1, 0, -1, 0, 0], &[-1, 1, 0, -1, 1], &[0, 0, 1, 0, -1], &[0, 0, -1, 1, 0]]);
    ensure(ct.matrix == expected, || format!("matrix {}", ct.matrix))?;
    let reference = params.encrypt_reference(&key, &m).map_err(|e| e.to_string())?;
    ensure(reference == ct, || "reference path differs".into())?;
    let back = params.decrypt(&key, &ct).map_err(|e| e.to_string())?;
    let d = params.decode(&back).map_err(|e| e.to_string())?;
    ensure(d.letter == Some('F'), || format!("decrypted {}", d.value))?;
    Ok("values 11 18 4 7 25; decrypts to 6 (F)".into())
}

fn check_example2() -> Check {
    let params = example2();
    let key = SecretKey::from_flat(&[3, 2, 3, 4, 3]).expect("key");
    let m = params.encode_number(&BigUint::from(38927u32)).map_err(|e| e.to_string())?;
    let ct = params.encrypt(&key, &m).map_err(|e| e.to_string())?;
    let got = ints(&params, &ct.values);
    let want = ["1", "101", "46596680922228", "12799379480831", "58938867466645", "10510100501", "1061520150601"];
    ensure(got == want, || format!("values {}", got.join(" ")))?;
    let expected = matrix(&[
        &[0, 1, 0, 0, 0, 0, 0],
        &[-1, 0, 1, 0, 0, 0, 0],
        &[0, -1, 0, 0, 1, 0, 0],
        &[0, 0, 0, 0, 1, -1, -1],
        &[0, 0, -1, -1, 0, 0, 0],
        &[0, 0, 0, 1, 0, 0, 0],
        &[0, 0, 0, 1, 0, 0, 0],
    ]);
    ensure(ct.matrix == expected, || format!("matrix {}", ct.matrix))?;
    let reference = params.encrypt_reference(&key, &m).map_err(|e| e.to_string())?;
    ensure(reference == ct, || "reference path differs".into())?;
    let back = params.decrypt(&key, &ct).map_err(|e| e.to_string())?;
    ensure(back == m, || "decryption differs".into())?;
    let wire = crypto::serialize(&params, &ct);
    let (p2, ct2) = crypto::deserialize(&wire).map_err(|e| e.to_string())?;
    ensure(crypto::serialize(&p2, &ct2) == wire, || "wire round trip not byte-exact".into())?;
    Ok("position 3 = 12799379480831; decrypts to 38927; wire exact".into())
}

fn random_type(rng: &mut ChaCha8Rng, families: &[Family]) -> (Family, usize) {
    loop {
        let f = *families.choose(rng).expect("nonempty");
        let r = rng.gen_range(2..=8);
        if f.valid_rank(r) {
            return (f, r);
        }
    }
}

fn random_matrix(rng: &mut ChaCha8Rng) -> ExchangeMatrix {
    let (f, r) = random_type(rng, &Family::ALL);
    let mut b = DynkinSpec::new(f, r).and_then(|s| s.exchange_matrix()).expect("valid type");
    for _ in 0..rng.gen_range(0..8) {
        b = b.mutate(rng.gen_range(0..r)).expect("in range");
    }
    b
}

fn check_involution(rng: &mut ChaCha8Rng, trials: usize) -> Check {
    let field = FieldParams::prime_field(1_000_003).expect("prime");
    let mut numeric = 0;
    for trial in 0..trials {
        let b = random_matrix(rng);
        let k = rng.gen_range(0..b.rank());
        let twice = b.mutate(k).and_then(|m| m.mutate(k)).map_err(|e| e.to_string())?;
        ensure(twice == b, || format!("trial {trial}: matrix mu_{k}^2 != id on {b}"))?;
        let values = (0..b.rank()).map(|_| field.constant(rng.gen_range(1..1_000_003))).collect();
        let seed = NumericSeed::new(values, b).map_err(|e| e.to_string())?;
        if let Ok(back) = seed.mutate(&field, k).and_then(|s| s.mutate(&field, k)) {
            ensure(back == seed, || format!("trial {trial}: seed mu_{k}^2 != id"))?;
            numeric += 1;
        }
    }
    Ok(format!("{trials} matrices, {numeric} seeds"))
}

fn check_round_trip(rng: &mut ChaCha8Rng, trials: usize) -> Check {
    let mut fields: HashMap<(u64, usize), FieldParams> = HashMap::new();
    let (mut ok, mut failed) = (0, 0);
    for trial in 0..trials {
        let (f, r) = random_type(rng, &[Family::A, Family::B, Family::C, Family::D]);
        let p = *[2u64, 3, 5, 7, 101].choose(rng).expect("nonempty");
        if BigUint::from(p).pow(r as u32) < BigUint::from(26u32) {
            continue;
        }
        let field = fields.entry((p, r)).or_insert_with(|| FieldParams::find_irreducible(p, r).expect("exists")).clone();
        let params = SystemParams::new(field, DynkinSpec::new(f, r).expect("valid")).map_err(|e| e.to_string())?;
        let t = rng.gen_range(2..=12);
        let key = crypto::keygen(rng, params.initial_matrix(), t).map_err(|e| e.to_string())?;
        let order = params.field().order();
        let n = loop {
            let n = rng.gen_biguint_below(&order);
            if !n.is_zero() {
                break n;
            }
        };
        let m = params.encode_number(&n).map_err(|e| e.to_string())?;
        match params.encrypt(&key, &m) {
            Ok(ct) => {
                let back = params.decrypt(&key, &ct).map_err(|e| format!("trial {trial} {f}{r} key {key}: {e}"))?;
                ensure(back == m, || format!("trial {trial} {f}{r} key {key}: wrong plaintext"))?;
                ok += 1;
            }
            Err(CryptoError::EncryptionFailed { .. }) => failed += 1,
            Err(e) => return Err(format!("trial {trial}: {e}")),
        }
    }
    Ok(format!("{ok} round trips, {failed} encryption failures"))
}

fn check_graphs() -> Check {
    let mut seen = Vec::new();
    for (f, r, n) in [
        (Family::A, 2, 5),
        (Family::A, 3, 14),
        (Family::A, 4, 42),
        (Family::B, 2, 6),
        (Family::B, 3, 20),
        (Family::D, 4, 50),
        (Family::G, 2, 8),
    ] {
        let b = DynkinSpec::new(f, r).and_then(|s| s.exchange_matrix()).map_err(|e| e.to_string())?;
        let g = enumerate_exchange_graph(&b, &EnumerateOptions::default()).map_err(|e| e.to_string())?;
        ensure(g.vertex_count() == n, || format!("{f}{r}: {} vertices, expected {n}", g.vertex_count()))?;
        ensure(g.is_regular() && g.is_connected(), || format!("{f}{r}: not regular and connected"))?;
        seen.push(format!("{f}{r}={n}"));
    }
    Ok(seen.join(" "))
}

fn check_probability() -> Check {
    let b = DynkinSpec::new(Family::A, 3).and_then(|s| s.exchange_matrix()).map_err(|e| e.to_string())?;
    let g = enumerate_exchange_graph(&b, &EnumerateOptions::default()).map_err(|e| e.to_string())?;
    let a3 = key_recovery_probability(Family::A, 3, Some(&g)).map_err(|e| e.to_string())?;
    let p = a3.probability.as_ref().map(|q| q.to_string());
    ensure(p.as_deref() == Some("1/84"), || format!("A3 probability {p:?}"))?;
    ensure(a3.has_flag(FLAG_CLOSED_FORM_MISMATCH), || "A3 closed-form mismatch not flagged".into())?;
    let b2 = key_recovery_probability(Family::B, 2, None).map_err(|e| e.to_string())?;
    let c = b2.closed_form.as_ref().map(|c| c.value().to_string());
    ensure(c.as_deref() == Some("1/12"), || format!("B2 closed form {c:?}"))?;
    Ok("A3 1/84 (flagged); B2 1/12".into())
}

pub fn run(a: SelftestArgs, format: Format) -> Result<String, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(a.rng_seed);
    let results: Vec<(&str, Check)> = vec![
        ("example-1", check_example1()),
        ("example-2", check_example2()),
        ("involution", check_involution(&mut rng, a.trials)),
        ("round-trip", check_round_trip(&mut rng, a.trials)),
        ("graph-counts", check_graphs()),
        ("probability", check_probability()),
    ];
    let rows: Vec<(&str, bool, String)> = results
        .into_iter()
        .map(|(name, r)| match r {
            Ok(d) => (name, true, d),
            Err(d) => (name, false, d),
        })
        .collect();
    let out = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&json!({
                "rng_seed": a.rng_seed,
                "trials": a.trials,
                "checks": rows.iter().map(|(n, ok, d)| json!({ "check": n, "pass": ok, "detail": d })).collect::<Vec<_>>(),
            }))
            .expect("json");
            s.push('\n');
            s
        }
        Format::Csv => csv(
            &["check", "pass", "detail"],
            &rows.iter().map(|(n, ok, d)| vec![n.to_string(), ok.to_string(), d.replace(',', ";")]).collect::<Vec<_>>(),
        ),
        Format::Text => rows
            .iter()
            .map(|(n, ok, d)| format!("{} {n:<14}{d}\n", if *ok { "PASS" } else { "FAIL" }))
            .collect(),
    };
    let failing: Vec<&str> = rows.iter().filter(|r| !r.1).map(|r| r.0).collect();
    if failing.is_empty() {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::new(EXIT_SELFTEST, anyhow!("failing checks: {}", failing.join(", "))))
    }
}
