//! Versioned JSON ciphertext records. Integers only, never floats; field
//! elements travel as ascending coordinate arrays.

use serde::{Deserialize, Serialize};

use super::{CiphertextSeed, CryptoError, SystemParams};
use crate::cluster::{DynkinSpec, ExchangeMatrix};
use crate::fields::FieldParams;

pub const WIRE_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireCiphertext {
    v: u32,
    p: u64,
    r: usize,
    f: Vec<u64>,
    diagram: DynkinSpec,
    matrix: ExchangeMatrix,
    values: Vec<Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireParams {
    v: u32,
    p: u64,
    r: usize,
    f: Vec<u64>,
    diagram: DynkinSpec,
}

fn parse_error(input: &str, e: serde_json::Error) -> CryptoError {
    CryptoError::Parse { position: byte_offset(input, e.line(), e.column()), message: e.to_string() }
}

fn build_params(v: u32, p: u64, r: usize, f: Vec<u64>, diagram: DynkinSpec) -> Result<SystemParams, CryptoError> {
    let whole = |message: String| CryptoError::Parse { position: 0, message };
    if v != WIRE_VERSION {
        return Err(whole(format!("unsupported version {v}")));
    }
    let field = FieldParams::new(p, r, f).map_err(|e| whole(format!("field: {e}")))?;
    SystemParams::new(field, diagram)
}

/// Public parameters alone: `{"v","p","r","f","diagram"}`.
pub fn serialize_params(params: &SystemParams) -> String {
    let field = params.field();
    let wire = WireParams {
        v: WIRE_VERSION,
        p: field.p(),
        r: field.r(),
        f: field.modulus().to_vec(),
        diagram: params.diagram().clone(),
    };
    serde_json::to_string(&wire).expect("plain data serializes")
}

pub fn deserialize_params(input: &str) -> Result<SystemParams, CryptoError> {
    let w: WireParams = serde_json::from_str(input).map_err(|e| parse_error(input, e))?;
    build_params(w.v, w.p, w.r, w.f, w.diagram)
}

/// Canonical compact encoding, no trailing newline.
pub fn serialize(params: &SystemParams, ct: &CiphertextSeed) -> String {
    let field = params.field();
    let wire = WireCiphertext {
        v: WIRE_VERSION,
        p: field.p(),
        r: field.r(),
        f: field.modulus().to_vec(),
        diagram: params.diagram().clone(),
        matrix: ct.matrix.clone(),
        values: ct.values.iter().map(|v| v.coords().to_vec()).collect(),
    };
    serde_json::to_string(&wire).expect("plain data serializes")
}

pub fn deserialize(input: &str) -> Result<(SystemParams, CiphertextSeed), CryptoError> {
    let wire: WireCiphertext = serde_json::from_str(input).map_err(|e| parse_error(input, e))?;
    let whole = |message: String| CryptoError::Parse { position: 0, message };
    let params = build_params(wire.v, wire.p, wire.r, wire.f, wire.diagram)?;
    let values = wire
        .values
        .into_iter()
        .map(|c| params.field().element(c))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| whole(format!("values: {e}")))?;
    let ct = CiphertextSeed { values, matrix: wire.matrix };
    params.check_ciphertext(&ct)?;
    Ok((params, ct))
}

/// serde_json reports 1-based lines and columns.
fn byte_offset(input: &str, line: usize, column: usize) -> usize {
    if line == 0 {
        return 0;
    }
    let start: usize = input.split_inclusive('\n').take(line - 1).map(str::len).sum();
    (start + column.saturating_sub(1)).min(input.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::Family;
    use crate::crypto::SecretKey;
    use num_bigint::BigUint;

    fn example2() -> (SystemParams, CiphertextSeed) {
        let f = FieldParams::new(101, 7, vec![46, 0, 1, 1, 0, 74, 0, 1]).unwrap();
        let params = SystemParams::new(f, DynkinSpec::new(Family::D, 7).unwrap()).unwrap();
        let key = SecretKey::from_flat(&[3, 2, 3, 4, 3]).unwrap();
        let m = params.encode_number(&BigUint::from(38927u32)).unwrap();
        let ct = params.encrypt(&key, &m).unwrap();
        (params, ct)
    }

    #[test]
    fn round_trip_is_byte_exact() {
        let (params, ct) = example2();
        let s = serialize(&params, &ct);
        assert!(s.starts_with(r#"{"v":1,"p":101,"r":7,"f":[46,0,1,1,0,74,0,1],"diagram":{"family":"D","rank":7},"#));
        assert!(!s.contains('.'), "no floats");
        let (p2, ct2) = deserialize(&s).unwrap();
        assert_eq!((&p2, &ct2), (&params, &ct));
        assert_eq!(serialize(&p2, &ct2), s);
        assert_eq!(
            p2.field().element_to_int(&ct2.values[3]),
            BigUint::from(12_799_379_480_831u64)
        );
    }

    #[test]
    fn malformed_inputs() {
        let (params, ct) = example2();
        let s = serialize(&params, &ct);
        let truncated = &s[..s.len() - 10];
        match deserialize(truncated) {
            Err(CryptoError::Parse { position, .. }) => assert!(position <= truncated.len()),
            other => panic!("{other:?}"),
        }
        assert!(matches!(deserialize(&s.replace("\"v\":1", "\"v\":2")), Err(CryptoError::Parse { .. })));
        assert!(matches!(deserialize(&s.replace("[46,0,1,1,0,74,0,1]", "[46,0,1,1,0,74,0,2]")), Err(CryptoError::Parse { .. })));
        match deserialize("{\"v\":1,\n \"p\": x}") {
            Err(CryptoError::Parse { position, .. }) => assert_eq!(position, 14),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn params_round_trip() {
        let (params, _) = example2();
        let s = serialize_params(&params);
        assert_eq!(s, r#"{"v":1,"p":101,"r":7,"f":[46,0,1,1,0,74,0,1],"diagram":{"family":"D","rank":7}}"#);
        assert_eq!(deserialize_params(&s).unwrap(), params);
        assert!(matches!(deserialize_params(&s.replace("\"rank\":7", "\"rank\":6")), Err(CryptoError::ParamsMismatch(_))));
        assert!(matches!(deserialize_params("{}"), Err(CryptoError::Parse { .. })));
    }
}
