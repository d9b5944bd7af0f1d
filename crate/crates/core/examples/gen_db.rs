//! Rebuilds `data/knots.json` from the shipped presentations.
use casson_core::elimination::{a_polynomial, alexander_polynomial, fixture, FIXTURE_NAMES};
use casson_core::invariants::{render_db, KnotRecord};
use casson_core::poly::{BiLaurent, IntPoly1};

fn main() {
    let mut recs = Vec::new();
    for name in FIXTURE_NAMES {
        let p = fixture(name).unwrap();
        recs.push(KnotRecord {
            name: name.to_string(),
            ahat: a_polynomial(&p).unwrap().apoly,
            alexander: alexander_polynomial(&p).unwrap(),
            presentation: Some(p),
            provenance: "computed: elimination from the shipped presentation".into(),
        });
    }
    recs.push(KnotRecord {
        name: "untwisted-double-trefoil".into(),
        ahat: BiLaurent::one(),
        alexander: IntPoly1::one(),
        presentation: None,
        provenance: "external, unverified: Whitehead double argument; no presentation shipped".into(),
    });
    print!("{}", render_db(&recs));
}
