use serde_json::Value;
use sunbose::formats::{BasisJson, MCIdentityRecord, OperatorJson, VectorJson};
use sunbose_core::coherent::{coherent_vector, Frame};
use sunbose_core::{IrrepLabel, SchwingerRealization, SectorBasis};

fn golden(name: &str) -> Value {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn su2_fundamental_basis_matches_golden() {
    let sector = SectorBasis::new(&IrrepLabel::new(2, vec![1]).unwrap()).unwrap();
    let json = serde_json::to_value(BasisJson::from(&sector)).unwrap();
    assert_eq!(json, golden("su2_fundamental_basis.json"));
}

#[test]
fn su2_fundamental_generators_match_golden() {
    let real = SchwingerRealization::new(&IrrepLabel::new(2, vec![1]).unwrap()).unwrap();
    let ops: Vec<OperatorJson> = real.generators.iter().map(OperatorJson::from).collect();
    assert_eq!(serde_json::to_value(&ops).unwrap(), golden("su2_fundamental_generators.json"));
}

#[test]
fn operators_round_trip() {
    let real = SchwingerRealization::new(&IrrepLabel::new(3, vec![1, 1]).unwrap()).unwrap();
    for q in &real.generators {
        let text = serde_json::to_string(&OperatorJson::from(q)).unwrap();
        let back: OperatorJson = serde_json::from_str(&text).unwrap();
        assert_eq!(&back.to_operator().unwrap(), q);
    }
}

#[test]
fn serialization_is_byte_stable() {
    let label = IrrepLabel::new(3, vec![2, 1]).unwrap();
    let a = serde_json::to_string(&BasisJson::from(&SectorBasis::new(&label).unwrap())).unwrap();
    let b = serde_json::to_string(&BasisJson::from(&SectorBasis::new(&label).unwrap())).unwrap();
    assert_eq!(a, b);
    let r1 = SchwingerRealization::new(&label).unwrap();
    let r2 = SchwingerRealization::new(&label).unwrap();
    for (x, y) in r1.generators.iter().zip(&r2.generators) {
        assert_eq!(
            serde_json::to_string(&OperatorJson::from(x)).unwrap(),
            serde_json::to_string(&OperatorJson::from(y)).unwrap()
        );
    }
}

#[test]
fn vectors_round_trip() {
    let label = IrrepLabel::new(3, vec![1, 1]).unwrap();
    let sector = SectorBasis::new(&label).unwrap();
    let z = coherent_vector(&Frame::standard(3).unwrap(), &sector).unwrap();
    let text = serde_json::to_string(&VectorJson::from(&z)).unwrap();
    let back: VectorJson = serde_json::from_str(&text).unwrap();
    assert_eq!(back.to_vector(), z);
}

#[test]
fn identity_record_field_names() {
    let sector = SectorBasis::new(&IrrepLabel::new(2, vec![1]).unwrap()).unwrap();
    let report = sunbose::mc::identity_mc(&sector, 200, 1).unwrap();
    let v = serde_json::to_value(MCIdentityRecord::new(&report, 1, 0.25)).unwrap();
    let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(
        keys,
        [
            "eigenvalues",
            "irrepDimEstimate",
            "kClusterMean",
            "kClusterSpread",
            "label",
            "samples",
            "seed",
            "wallTime",
            "zeroClusterMax"
        ]
    );
    assert_eq!(v["zeroClusterMax"], Value::Null);
}
