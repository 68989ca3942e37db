use std::collections::{BTreeSet, HashSet};

use super::{Corpus, DataPoint, DatasetError, Status, SurfacePair};
use crate::morphology::{MorphologyError, Root, SurfaceForm, TemplateInventory};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FunnelReport {
    pub n_candidates: usize,
    pub n_auto_rejected: usize,
    pub n_for_review: usize,
    /// Filled in after review; 0 until then.
    pub n_final: usize,
    /// Noun/denominal pairs dropped because no root verb was attested.
    pub n_no_root_verbs: usize,
}

impl FunnelReport {
    pub fn to_text(&self) -> String {
        format!(
            "candidates\t{}\nno_root_verbs\t{}\nauto_rejected\t{}\nfor_review\t{}\nfinal\t{}\n",
            self.n_candidates,
            self.n_no_root_verbs,
            self.n_auto_rejected,
            self.n_for_review,
            self.n_final
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Candidates {
    pub points: Vec<DataPoint>,
    pub n_no_root_verbs: usize,
}

fn attested(forms: &[(String, String)], corpus: &Corpus) -> bool {
    forms.iter().any(|(_, f)| corpus.verb_set.contains(f))
}

/// Enumerates candidate data points for every corpus noun that parses under
/// a nominal template with denominal targets.
///
/// A root verb is kept when one of its inflections is a corpus verb, or when
/// its infinitive is in `vocabulary`. Pairs left with no root verb are
/// counted, not returned. Output is sorted by noun, then denominal template.
pub fn generate_candidates(
    corpus: &Corpus,
    inventory: &TemplateInventory,
    vocabulary: Option<&HashSet<String>>,
) -> Result<Candidates, DatasetError> {
    let alphabet = inventory.alphabet();
    let mut out = Candidates::default();
    let mut seen: BTreeSet<(String, String)> = BTreeSet::new();
    let root_templates: Vec<_> = inventory.root_verb_templates().collect();

    for noun_text in &corpus.noun_set {
        for nt in inventory.nominal_templates() {
            if nt.denominal_targets.is_empty() {
                continue;
            }
            for root in inventory.extract_roots(noun_text, nt) {
                let noun = inventory.apply_template(&root, nt)?;
                let lookup = if nt.lookup_plural {
                    inventory.pluralize(&noun)?
                } else {
                    noun.text.clone()
                };
                let droot = match inventory.denominal_root(&noun) {
                    Ok(r) => r,
                    Err(MorphologyError::RootLength(_)) => continue,
                    Err(e) => return Err(e.into()),
                };
                let mut verbs: Vec<String> = Vec::new();
                for t in &root_templates {
                    let Ok(form) = inventory.apply_template(&root, t) else {
                        continue;
                    };
                    let forms = inventory.inflect(&root, t)?;
                    let in_vocab = vocabulary.is_some_and(|v| v.contains(&form.text));
                    if (attested(&forms, corpus) || in_vocab) && !verbs.contains(&form.text) {
                        verbs.push(form.text);
                    }
                }
                for target in &nt.denominal_targets {
                    let dt = inventory.require(target)?;
                    let denominal = match inventory.apply_template(&droot, dt) {
                        Ok(d) => d,
                        Err(MorphologyError::ArityMismatch { .. }) => continue,
                        Err(e) => return Err(e.into()),
                    };
                    let key = (alphabet.normalize(noun_text), denominal.text.clone());
                    if seen.contains(&key) {
                        continue;
                    }
                    let rv: Vec<String> = verbs
                        .iter()
                        .filter(|v| **v != denominal.text)
                        .cloned()
                        .collect();
                    if rv.is_empty() {
                        out.n_no_root_verbs += 1;
                        seen.insert(key);
                        continue;
                    }
                    seen.insert(key);
                    out.points.push(DataPoint::new(
                        SurfacePair::from(&noun),
                        root_text(&root),
                        SurfacePair::from(&denominal),
                        rv,
                        lookup.clone(),
                        Status::Auto,
                    )?);
                }
            }
        }
    }
    out.points.sort_by(|a, b| {
        (&a.noun, &a.denominal_template, &a.denominal, &a.root).cmp(&(
            &b.noun,
            &b.denominal_template,
            &b.denominal,
            &b.root,
        ))
    });
    Ok(out)
}

fn root_text(root: &Root) -> String {
    root.consonants().concat()
}

/// Inflections of a point's denominal, rebuilt from its noun analysis.
fn denominal_forms(
    p: &DataPoint,
    inventory: &TemplateInventory,
) -> Result<Vec<(String, String)>, DatasetError> {
    let root = Root::parse(&p.root, inventory.alphabet())?;
    let noun = SurfaceForm {
        text: p.noun.clone(),
        template_id: p.noun_template.clone(),
        root,
    };
    let droot = inventory.denominal_root(&noun)?;
    let dt = inventory.require(&p.denominal_template)?;
    Ok(inventory.inflect(&droot, dt)?)
}

/// Keeps points whose denominal, or one of its inflections, is a corpus verb.
pub fn attestation_filter(
    points: Vec<DataPoint>,
    corpus: &Corpus,
    inventory: &TemplateInventory,
) -> Result<(Vec<DataPoint>, Vec<DataPoint>, FunnelReport), DatasetError> {
    let mut kept = Vec::new();
    let mut rejected = Vec::new();
    let n_candidates = points.len();
    for p in points {
        let forms = denominal_forms(&p, inventory)?;
        if corpus.verb_set.contains(&p.denominal) || attested(&forms, corpus) {
            kept.push(p);
        } else {
            rejected.push(p);
        }
    }
    let report = FunnelReport {
        n_candidates,
        n_auto_rejected: rejected.len(),
        n_for_review: kept.len(),
        n_final: 0,
        n_no_root_verbs: 0,
    };
    Ok((kept, rejected, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datasetgen::{ingest_corpus, CorpusConfig};
    use crate::morphology::Alphabet;

    fn latin() -> TemplateInventory {
        TemplateInventory::parse(include_str!("../../data/latin.tsv"), Alphabet::latin()).unwrap()
    }

    fn corpus(text: &str) -> Corpus {
        ingest_corpus(
            text.as_bytes(),
            &CorpusConfig::default(),
            &Alphabet::latin(),
        )
        .unwrap()
    }

    #[test]
    fn computer() {
        let inv = latin();
        let c = corpus("maxfev\tN\nxifev\tV\nmixfev\tV\n");
        let cands = generate_candidates(&c, &inv, None).unwrap();
        let d: Vec<&str> = cands.points.iter().map(|p| p.denominal.as_str()).collect();
        assert!(d.contains(&"lemaxfev"));
        let p = cands
            .points
            .iter()
            .find(|p| p.denominal == "lemaxfev")
            .unwrap();
        assert_eq!(p.root, "xfv");
        assert_eq!(p.root_verbs, vec!["lexafev"]);
        p.verify_against(&inv).unwrap();

        let (kept, rejected, report) = attestation_filter(cands.points.clone(), &c, &inv).unwrap();
        assert_eq!(report.n_candidates, kept.len() + rejected.len());
        assert!(kept.iter().any(|p| p.denominal == "lemaxfev"));
        assert!(rejected.iter().any(|p| p.denominal == "lehitmaxfev"));
    }

    #[test]
    fn bill_gives_two() {
        let inv = latin();
        let c = corpus("xefbon\tN\nxafab\tV\n");
        let cands = generate_candidates(&c, &inv, None).unwrap();
        let t: Vec<&str> = cands
            .points
            .iter()
            .map(|p| p.denominal_template.as_str())
            .collect();
        assert_eq!(t, vec!["leCaCCen", "lehitCaCCen"]);
        assert_eq!(cands.points[1].denominal, "lehitxafben");
    }

    #[test]
    fn unattested_root_verbs_drop_the_pair() {
        let inv = latin();
        let c = corpus("maxfev\tN\n");
        let cands = generate_candidates(&c, &inv, None).unwrap();
        assert!(cands.points.is_empty());
        assert_eq!(cands.n_no_root_verbs, 2);
        let vocab: HashSet<String> = ["lexafev".to_string()].into();
        let cands = generate_candidates(&c, &inv, Some(&vocab)).unwrap();
        assert_eq!(cands.points.len(), 2);
    }
}
