//! Lower-bound fixture graphs: build every family on both sides of its
//! set-disjointness dichotomy and confirm the oracle lands where the
//! construction promises.
//!
//! Run with: cargo run --example gadget_dichotomies

use congest_graphs::gadgets::{check_dichotomy, gen_gadget, GadgetFamily, GadgetSpec};

fn main() {
    let families = [
        GadgetFamily::DirwRpaths,
        GadgetFamily::DirwRpathsSink,
        GadgetFamily::DirunwRpaths,
        GadgetFamily::UndirRpaths,
        GadgetFamily::DirMwc,
        GadgetFamily::UndirwMwc,
        GadgetFamily::QCycle { q: 5 },
    ];
    for family in families {
        for intersecting in [true, false] {
            let k = if matches!(family, GadgetFamily::DirunwRpaths | GadgetFamily::UndirRpaths) {
                12
            } else {
                4
            };
            let spec = GadgetSpec::random(family, k, intersecting, 1);
            let inst = gen_gadget(&spec).unwrap();
            let v = check_dichotomy(&inst);
            println!(
                "{:>16} k={k} n={:>3} intersecting={intersecting:5}: measured {:>4} vs {}  [{}]",
                v.family,
                inst.graph.n(),
                v.measured,
                v.requirement,
                if v.pass { "ok" } else { "VIOLATION" }
            );
            assert!(v.pass);
        }
    }
}
