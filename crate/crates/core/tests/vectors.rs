use proptest::prelude::*;
use rootspace::datasetgen::{DataPoint, Status};
use rootspace::morphology::Alphabet;
use rootspace::vectors::{coverage_report, DropReason, EmbeddingSpace, Format, VectorError};

fn space_from(rows: &[(String, Vec<f64>)]) -> EmbeddingSpace {
    let mut s = EmbeddingSpace::new(rows[0].1.len(), "t");
    for (t, v) in rows {
        s.insert(t, v);
    }
    s
}

fn rows_strategy() -> impl Strategy<Value = Vec<(String, Vec<f64>)>> {
    (1usize..12).prop_flat_map(|dim| {
        proptest::collection::btree_map(
            "[a-z]{1,8}",
            proptest::collection::vec(-0.999_999f64..0.999_999, dim),
            1..20,
        )
        .prop_map(|m| m.into_iter().collect())
    })
}

proptest! {
    #[test]
    fn save_load_roundtrip(rows in rows_strategy()) {
        let s = space_from(&rows);
        let dir = tempfile::tempdir().unwrap();
        let file = dir.path().join("v.vec");
        s.save(&file).unwrap();
        let back = EmbeddingSpace::load(&file, Format::Auto, "t").unwrap();
        prop_assert_eq!(back.dim(), s.dim());
        prop_assert_eq!(back.tokens(), s.tokens());
        for (t, v) in &rows {
            let w = back.lookup(t).unwrap();
            for (a, b) in v.iter().zip(w) {
                prop_assert!((a - b).abs() <= 1e-6, "{} {} {}", t, a, b);
            }
        }
    }
}

#[test]
fn six_significant_digits() {
    let mut s = EmbeddingSpace::new(7, "t");
    s.insert(
        "w",
        &[0.0, 1.0, -0.5, 123456.7, 1e-5, 0.000123456789, 2.5e10],
    );
    let text = s.to_word2vec_text();
    assert_eq!(text, "1 7\nw 0 1 -0.5 123457 1e-05 0.000123457 2.5e+10\n");
}

#[test]
fn glove_and_word2vec_agree() {
    let glove = "a 0.1 0.2\nb -1 3\n";
    let w2v = "2 2\na 0.1 0.2\nb -1 3\n";
    let g = EmbeddingSpace::parse(glove, Format::GloveText, "g").unwrap();
    let w = EmbeddingSpace::parse(w2v, Format::Word2VecText, "w").unwrap();
    let auto = EmbeddingSpace::parse(w2v, Format::Auto, "w").unwrap();
    for t in ["a", "b"] {
        assert_eq!(g.lookup(t), w.lookup(t));
        assert_eq!(auto.lookup(t), w.lookup(t));
    }
    assert!(matches!(
        EmbeddingSpace::parse("2\na 1 2\n", Format::Word2VecText, ""),
        Err(VectorError::BadHeader(1))
    ));
}

#[test]
fn final_letters_are_folded_with_an_alphabet() {
    // final kaf in the file, medial kaf in the lookup
    let text = "מלך 1 0 0\nלמלך 0 1 0\n";
    let raw = EmbeddingSpace::parse(text, Format::Auto, "he").unwrap();
    assert!(!raw.contains("מלכ"));
    let s = raw.with_alphabet(Alphabet::hebrew());
    assert_eq!(s.lookup("מלכ"), Some(&[1.0, 0.0, 0.0][..]));
    assert_eq!(s.lookup("מלך"), Some(&[1.0, 0.0, 0.0][..]));
    assert_eq!(s.tokens()[1], "למלך");
}

#[test]
fn duplicates_are_counted() {
    let s = EmbeddingSpace::parse("a 1 2\na 3 4\n", Format::Auto, "").unwrap();
    assert_eq!(s.duplicates, 1);
    assert_eq!(s.lookup("a"), Some(&[3.0, 4.0][..]));
}

fn point(i: usize, k: usize) -> DataPoint {
    DataPoint {
        noun: format!("n{i}"),
        noun_template: "x".into(),
        noun_lookup_form: format!("n{i}"),
        root: format!("r{i}"),
        denominal: format!("d{i}"),
        denominal_template: "y".into(),
        root_verbs: (0..k).map(|j| format!("v{i}_{j}")).collect(),
        status: Status::Kept,
    }
}

#[test]
fn drop_reasons() {
    let points = vec![point(0, 2), point(1, 2), point(2, 2), point(3, 2)];
    let mut s = EmbeddingSpace::new(2, "t");
    for t in [
        "n0", "d0", "v0_0", "v0_1", "d1", "n2", "v2_0", "v2_1", "n3", "d3", "v3_1",
    ] {
        s.insert(t, &[1.0, 0.0]);
    }
    let r = coverage_report(&points, &s);
    let ids: Vec<usize> = r.kept.iter().map(|(i, _)| *i).collect();
    assert_eq!(ids, [0, 3]);
    assert_eq!(r.kept[1].1.root_verbs, ["v3_1"]);
    let reasons: Vec<(usize, DropReason)> =
        r.drops.iter().map(|d| (d.point_id, d.reason)).collect();
    assert_eq!(
        reasons,
        [
            (1, DropReason::MissingNoun),
            (2, DropReason::MissingDenominal),
            (3, DropReason::MissingRootVerb)
        ]
    );
    assert_eq!(r.n_dropped_points(), 2);
    assert_eq!(
        r.to_csv(),
        "point_id,form,reason\n1,n1,missing_noun\n2,d2,missing_denominal\n3,v3_0,missing_root_verb\n"
    );
}

proptest! {
    /// Coverage never adds root verbs and never leaves a kept point with none.
    #[test]
    fn coverage_only_shrinks(
        ks in proptest::collection::vec(1usize..=5, 1..15),
        present in proptest::collection::vec(any::<bool>(), 100),
    ) {
        let points: Vec<DataPoint> = ks.iter().enumerate().map(|(i, &k)| point(i, k)).collect();
        let mut s = EmbeddingSpace::new(1, "t");
        let mut bit = present.iter().cycle();
        for p in &points {
            for t in p.lookup_tokens() {
                if *bit.next().unwrap() {
                    s.insert(t, &[1.0]);
                }
            }
        }
        let r = coverage_report(&points, &s);
        for (id, q) in &r.kept {
            let p = &points[*id];
            prop_assert!(q.k() >= 1);
            prop_assert!(q.k() <= p.k());
            prop_assert!(q.root_verbs.iter().all(|v| p.root_verbs.contains(v) && s.contains(v)));
        }
        prop_assert_eq!(r.kept.len() + r.n_dropped_points(), points.len());
    }
}

#[test]
fn wide_exporter_style_file() {
    let mut text = String::from("3 768\n");
    for w in ["a", "b", "c"] {
        text.push_str(w);
        for i in 0..768 {
            text.push_str(&format!(" {}", (i as f64) * 1e-3));
        }
        text.push('\n');
    }
    let s = EmbeddingSpace::parse(&text, Format::Auto, "bert").unwrap();
    assert_eq!((s.dim(), s.len()), (768, 3));
    assert_eq!(s.tokens(), ["a", "b", "c"]);
}
