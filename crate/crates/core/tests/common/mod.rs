#![allow(dead_code)]

use std::path::PathBuf;

use cxc_core::format::{serialize, Document};
use cxc_core::gen::{self, Family, GenSpec};

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Corpus documents stored as golden files, by file name.
pub fn golden_documents() -> Vec<(String, String)> {
    let mut specs: Vec<GenSpec> = gen::finite_corpus(2024, 18).into_iter().map(|(s, _)| s).collect();
    for family in Family::ALL {
        if !specs.iter().any(|s| s.family == family) {
            specs.push(GenSpec { seed: 7, family, size: 4 });
        }
    }
    for seed in 1..=3 {
        specs.push(GenSpec { seed, family: Family::PeriodicPendant, size: 3 + seed as usize });
    }
    specs
        .iter()
        .enumerate()
        .map(|(i, spec)| (format!("{i:02}-{}.cxc", spec.family.name()), serialize(&Document::generated(spec))))
        .collect()
}

/// Canonical golden files plus `(raw input, expected canonical text)` pairs.
pub fn golden_files() -> (Vec<(String, String)>, Vec<(String, String, String)>) {
    let dir = golden_dir();
    let mut canonical = Vec::new();
    let mut raw = Vec::new();
    let mut names: Vec<_> = std::fs::read_dir(&dir)
        .expect("golden dir")
        .map(|e| e.expect("entry").file_name().into_string().expect("utf-8 name"))
        .filter(|n| n.ends_with(".cxc"))
        .collect();
    names.sort();
    for name in names {
        let text = std::fs::read_to_string(dir.join(&name)).expect("golden file");
        let input = dir.join("raw").join(&name);
        if input.exists() {
            raw.push((name.clone(), std::fs::read_to_string(input).expect("raw file"), text.clone()));
        }
        canonical.push((name, text));
    }
    (canonical, raw)
}

pub mod strategies {
    use cxc_core::gen::{self, Family, GenSpec, Generated, PeriodicFixture};
    use cxc_core::CubeComplex;
    use proptest::prelude::*;

    /// A CAT(0) complex from one of the finite generator families.
    pub fn cat0_complex() -> impl Strategy<Value = CubeComplex> {
        (
            any::<u64>(),
            prop::sample::select(vec![Family::Tree, Family::Expansion, Family::GridSubcomplex, Family::Product]),
            1usize..14,
        )
            .prop_map(|(seed, family, size)| match (GenSpec { seed, family, size }).generate() {
                Generated::Finite(x) => x,
                Generated::Periodic(_) => unreachable!("finite families"),
            })
    }

    /// A periodic corpus example with its shift map.
    pub fn periodic_fixture() -> impl Strategy<Value = PeriodicFixture> {
        prop_oneof![
            Just(gen::periodic_line()),
            Just(gen::periodic_ladder()),
            Just(gen::periodic_glide()),
            Just(gen::periodic_glide_squared()),
            (any::<u64>(), 1usize..7).prop_map(|(seed, size)| gen::periodic_pendant(seed, size)),
        ]
    }
}
