use std::path::PathBuf;

use proptest::prelude::*;
use rees_cli::InstanceDecl;
use rees_core::{Error, PrimeField};

fn samples() -> Vec<PathBuf> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../samples");
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "rees"))
        .collect();
    files.sort();
    files
}

fn sample(name: &str) -> InstanceDecl {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../samples");
    InstanceDecl::parse(&std::fs::read_to_string(dir.join(name)).unwrap()).unwrap()
}

#[test]
fn maximal_ideal_sample() {
    let decl = sample("maximal-ideal.rees");
    assert_eq!(decl.ring.vars, ["x", "y"]);
    assert_eq!(decl.rank, 1);
    assert_eq!(
        decl.generators,
        [vec!["x".to_string()], vec!["y".to_string()]]
    );
    assert_eq!(decl.options.n_max, 6);
    assert_eq!(decl.options.window, 3);
    assert_eq!(decl.options.max_degree, 64);
    assert_eq!(decl.ring.characteristic, 32003);
}

#[test]
fn every_sample_round_trips() {
    let files = samples();
    assert!(files.len() >= 10);
    for f in files {
        let decl = InstanceDecl::parse(&std::fs::read_to_string(&f).unwrap()).unwrap();
        let printed = decl.to_string();
        let again = InstanceDecl::parse(&printed).unwrap();
        assert_eq!(again, decl, "{}", f.display());
        assert_eq!(again.to_string(), printed);
    }
}

#[test]
fn mixed_degree_column_is_rejected() {
    let decl =
        InstanceDecl::parse("[ring]\nvars = x, y\n[module]\nrank = 2\ngen = x, 1\n").unwrap();
    match decl.build(PrimeField::default()) {
        Err(Error::Validation(msg)) => assert!(msg.contains("generator 1"), "{msg}"),
        other => panic!("expected a validation error, got {:?}", other.err()),
    }
}

#[test]
fn spanning_generators_are_rejected() {
    let decl =
        InstanceDecl::parse("[ring]\nvars = x\n[module]\nrank = 2\ngen = 1, 0\ngen = 0, 1\n")
            .unwrap();
    match decl.build(PrimeField::default()) {
        Err(Error::Validation(msg)) => assert!(msg.contains("E = G"), "{msg}"),
        other => panic!("expected a validation error, got {:?}", other.err()),
    }
}

fn parse_error(text: &str) -> (usize, usize) {
    match InstanceDecl::parse(text) {
        Err(Error::Parse { line, column, .. }) => (line, column),
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn parse_errors_carry_positions() {
    assert_eq!(parse_error("[ring]\nvars = x\nfoo = 1\n"), (3, 1));
    assert_eq!(
        parse_error("[ring]\nvars = x, y\n[module]\nrank = 1\ngen = x + *y\n"),
        (5, 11)
    );
    assert_eq!(
        parse_error("[ring]\nvars = x\n[module]\nrank = 2\ngen = x\n"),
        (5, 1)
    );
    assert_eq!(parse_error("[rings]\n"), (1, 2));
    assert_eq!(parse_error("[ring]\nchar = -1\n"), (2, 8));
    assert_eq!(parse_error("vars = x\n"), (1, 1));
}

#[test]
fn comments_and_weights() {
    let decl = InstanceDecl::parse(
        "# header\n[ring]\nvars = x, y # two variables\nweights = 1, 2\n[module]\nrank = 1\ngen = x^2\ngen = y\n",
    )
    .unwrap();
    assert_eq!(decl.ring.weights, [1, 2]);
    assert!(decl.build(PrimeField::default()).is_ok());
    let err =
        InstanceDecl::parse("[ring]\nvars = x, y\nweights = 1\n[module]\nrank = 1\ngen = x\n");
    assert!(matches!(err, Err(Error::Parse { line: 3, .. })));
}

#[test]
fn supplied_primes_are_parsed() {
    let decl = sample("non-monomial.rees");
    assert_eq!(
        decl.options.primes,
        [vec!["x".to_string(), "y".to_string()]]
    );
    let inst = decl.build(PrimeField::default()).unwrap();
    assert_eq!(inst.primes().unwrap().len(), 1);
}

fn arb_entry() -> impl Strategy<Value = String> {
    prop::sample::select(vec![
        "0",
        "x",
        "y",
        "x^2",
        "x*y",
        "y^2 - x^2",
        "3*x",
        "x + y",
        "-y",
    ])
    .prop_map(String::from)
}

proptest! {
    #[test]
    fn printed_decls_parse_back(
        rank in 1usize..=3,
        cols in prop::collection::vec(prop::collection::vec(arb_entry(), 3), 1..=4),
        n_max in 1usize..10,
        window in 1usize..5,
        seed in any::<u64>(),
        weights in prop::collection::vec(1u32..4, 2),
    ) {
        let mut decl = InstanceDecl::parse("[ring]\nvars = x, y\n[module]\nrank = 1\ngen = x\n").unwrap();
        decl.rank = rank;
        decl.generators = cols.into_iter().map(|mut c| { c.truncate(rank); c }).collect();
        decl.options.n_max = n_max;
        decl.options.window = window;
        decl.options.seed = seed;
        decl.ring.weights = weights;
        let text = decl.to_string();
        prop_assert_eq!(InstanceDecl::parse(&text).unwrap(), decl);
    }
}
