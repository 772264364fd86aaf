use locked_matroid::corpus::{corpus, DEFAULT_SEED};
use locked_matroid::format::{read_matroid, write_matroid, NamedMatroid};
use locked_matroid::spec::parse_spec;

#[test]
fn every_corpus_matroid_round_trips() {
    for entry in corpus(DEFAULT_SEED) {
        let text = write_matroid(&entry.name, &entry.matroid);
        let back = read_matroid(&text).unwrap();
        assert_eq!(back, NamedMatroid::new(entry.name.clone(), entry.matroid.clone()), "{}", entry.name);
        assert_eq!(write_matroid(&back.name, &back.matroid), text);
    }
}

#[test]
fn corpus_names_rebuild_their_entries() {
    for entry in corpus(DEFAULT_SEED) {
        assert_eq!(parse_spec(&entry.name).unwrap(), entry.matroid, "{}", entry.name);
    }
}

#[test]
fn default_corpus_shape() {
    let entries = corpus(DEFAULT_SEED);
    assert_eq!(entries.len(), 53);
    let sums: Vec<&str> = entries.iter().map(|e| e.name.as_str()).filter(|n| n.starts_with("twosum:")).collect();
    assert_eq!(
        sums,
        [
            "twosum:uniform:3,6+uniform:3,5@e4,f0",
            "twosum:uniform:1,4+uniform:3,4@e0,f2",
            "twosum:uniform:3,6+uniform:3,4@e1,f1"
        ]
    );
}
