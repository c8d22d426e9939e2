use std::path::PathBuf;

use oprd::cli::{parse_presentation, serialize_presentation};
use oprd::presets;

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../presets")
}

#[test]
fn shipped_files_match_catalog() {
    for name in presets::shipped() {
        let path = dir().join(presets::file_name(&name));
        let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(text, presets::preset_text(&name).unwrap(), "{name}");
    }
}

#[test]
fn shipped_files_round_trip() {
    for name in presets::shipped() {
        let p = presets::preset(&name).unwrap();
        let again = parse_presentation(&serialize_presentation(&p)).unwrap();
        assert_eq!(p, again, "{name}");
    }
}

#[test]
fn no_stray_files() {
    let names: Vec<String> = presets::shipped().iter().map(|n| presets::file_name(n)).collect();
    for entry in std::fs::read_dir(dir()).unwrap() {
        let f = entry.unwrap().file_name().into_string().unwrap();
        assert!(names.contains(&f), "unexpected preset file {f}");
    }
}
