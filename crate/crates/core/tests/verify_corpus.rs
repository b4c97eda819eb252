use std::path::PathBuf;
use std::sync::Arc;

use tauwide::arquiver::DEFAULT_BUDGET;
use tauwide::catalog::Catalog;
use tauwide::reduction::Reducer;
use tauwide::verify::{run_verify, SUITES};
use tauwide::wide_category::WideCategory;
use tauwide::{parse_presentation, Algebra};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn category(name: &str) -> WideCategory {
    let text = std::fs::read_to_string(corpus(name)).unwrap();
    let alg = Algebra::build(parse_presentation(&text).unwrap()).unwrap();
    let cat = Catalog::build(&alg, DEFAULT_BUDGET).unwrap();
    WideCategory::build(Arc::new(Reducer::new(Arc::new(cat)))).unwrap()
}

#[test]
fn every_suite_passes_on_the_corpus() {
    for name in ["lambda9.alg", "ka2.alg", "preproj_a2.alg", "semisimple2.alg", "trivial.alg", "a3.alg"] {
        let c = category(name);
        let rep = run_verify(&c, &SUITES).unwrap();
        for s in &rep.suites {
            eprintln!("{name} {} checks={} failures={} {}ms", s.suite, s.checks, s.failure_count, s.millis);
        }
        for s in &rep.suites {
            assert_eq!(s.failure_count, 0, "{name} {}: {}", s.suite, serde_json::to_string(&s.failures).unwrap());
        }
    }
}
