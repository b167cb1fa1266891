//! Replays the checked-in fuzz seeds through the same entry points the
//! fuzz targets call.

use std::fs;
use std::path::PathBuf;

use weaksub::instance;
use weaksub::Subset;

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let path = e.unwrap().path();
            (path.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn instance_seeds() {
    let mut parsed = 0;
    for (name, data) in seeds("instance") {
        let Ok(text) = std::str::from_utf8(&data) else { continue };
        if let Ok(inst) = instance::parse_instance(text) {
            inst.function.evaluate(&Subset::full(inst.function.n())).unwrap();
            parsed += 1;
        } else {
            assert!(name.starts_with("malformed") || name.starts_with("not_a_matroid"), "{name} rejected");
        }
    }
    assert!(parsed >= 5);
}

#[test]
fn function_seeds() {
    for (name, data) in seeds("function") {
        let (&n, rest) = data.split_first().unwrap();
        let text = std::str::from_utf8(rest).unwrap();
        let f = instance::parse_function(text, Some((n % 16) as usize)).unwrap_or_else(|e| panic!("{name}: {e}"));
        f.evaluate(&Subset::full(f.n())).unwrap();
    }
}

#[test]
fn matroid_seeds() {
    for (name, data) in seeds("matroid") {
        let (&n, rest) = data.split_first().unwrap();
        let text = std::str::from_utf8(rest).unwrap();
        let n = (n % 12) as usize;
        match instance::parse_matroid(text, n) {
            Ok(m) => assert!(m.is_independent(&Subset::empty(n)).unwrap()),
            Err(e) => assert_eq!(name, "cardinality", "{e}"),
        }
    }
}
