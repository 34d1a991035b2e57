//! The committed `.pad` files are the canonical serialization of the
//! built-in fixtures. Regenerate with `UPDATE_GOLDEN=1 cargo test --test golden`.

use std::path::PathBuf;

use protoalg::fixtures;
use protoalg::format::{parse_definition, serialize_definition};
use protoalg::model::validate;

fn path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.pad"))
}

#[test]
fn golden_files_match_fixtures() {
    for (name, pa) in [("parity", fixtures::parity()), ("choice", fixtures::choice()), ("echo", fixtures::echo())] {
        let text = serialize_definition(&pa);
        if std::env::var_os("UPDATE_GOLDEN").is_some() {
            std::fs::write(path(name), &text).unwrap();
        }
        let on_disk = std::fs::read_to_string(path(name)).unwrap();
        assert_eq!(on_disk, text, "{name}.pad is stale");
        let parsed = parse_definition(&on_disk).unwrap();
        assert_eq!(parsed, pa);
        assert!(validate(&parsed).is_valid());
    }
}
