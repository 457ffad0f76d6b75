use ellcorr::engine::{read_cache, write_cache, CorrTable, Kind, Source};
use ellcorr::ellring::Basis;

#[test]
fn entries_are_homogeneous_with_bounded_pi_degree() {
    let t = CorrTable::build(4).unwrap();
    for (m, n) in t.points() {
        let top = m.max(n) as u32;
        let gap = m.abs_diff(n) as u32;
        for (kind, v) in [("C", t.c_entry(m, n).unwrap()), ("C_d", t.c_dual(m, n).unwrap())] {
            assert!(v.is_homogeneous(top), "{kind}({m},{n}) not of degree {top}");
            assert!(v.pi_degree() <= gap, "{kind}({m},{n}) has Π degree {}", v.pi_degree());
        }
    }
}

#[test]
fn adapted_coefficients_carry_one_root_at_most() {
    let t = CorrTable::build(4).unwrap();
    for (m, n) in t.points() {
        let v = t.c_entry(m, n).unwrap();
        let want = match (m.abs_diff(n) % 2, m < n) {
            (0, _) => 0,
            (_, true) => 1,
            (_, false) => 2,
        };
        for (_, c) in v.terms() {
            assert_eq!(c.support(), vec![want], "C({m},{n})");
        }
    }
}

#[test]
fn sources_record_how_entries_were_obtained() {
    let t = CorrTable::build(3).unwrap();
    assert_eq!(t.source(Kind::C, 0, 1), Some(Source::Seed));
    assert_eq!(t.source(Kind::C, 2, 2), Some(Source::Diagonal));
    assert_eq!(t.source(Kind::CDual, 1, 2), Some(Source::Solved));
    assert_eq!(t.c_entry(2, 1).unwrap().basis(), Basis::PiP);
}

#[test]
fn cache_file_round_trip() {
    let dir = std::env::temp_dir().join(format!("ellcorr-table-{}", std::process::id()));
    let path = dir.join("table.json");
    assert!(read_cache(&path).unwrap().is_none());
    let t = CorrTable::build(3).unwrap();
    write_cache(&path, &t).unwrap();
    let first = std::fs::read(&path).unwrap();
    let back = read_cache(&path).unwrap().unwrap();
    assert_eq!(back, t);
    write_cache(&path, &back).unwrap();
    assert_eq!(std::fs::read(&path).unwrap(), first);

    let text = String::from_utf8(first).unwrap().replace("\"version\": 1", "\"version\": 99");
    std::fs::write(&path, text).unwrap();
    assert!(read_cache(&path).is_err());
    std::fs::remove_dir_all(&dir).unwrap();
}
