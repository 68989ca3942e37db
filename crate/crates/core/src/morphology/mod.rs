//! Root-and-pattern morphology.
//!
//! Templates are sequences of fixed letters and numbered root slots. Applying a
//! template to a root fills the slots, applies sibilant metathesis where the
//! template asks for it, and spells the last letter in its word-final form.
//! Root extraction is the exact inverse: every root whose application
//! reproduces the (normalized) word is returned.

mod alphabet;
mod inventory;
mod template;

pub use alphabet::Alphabet;
pub use inventory::{TemplateInventory, ROOT_VERB_TEMPLATE_COUNT};
pub use template::{
    AmbiguityClass, Pattern, PatternVariant, PluralPattern, Pos, Root, Segment, SurfaceForm,
    Template,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum MorphologyError {
    #[error("template {template:?} has no pattern for {arity}-consonant roots")]
    ArityMismatch { template: String, arity: usize },
    #[error("letter {0:?} is not in the alphabet")]
    UnknownLetter(String),
    #[error("roots have 2 to 4 consonants, got {0}")]
    RootLength(usize),
    #[error("template {0:?} has no templatic consonant")]
    NoTemplaticConsonant(String),
    #[error("template {0:?} has no plural pattern")]
    NoPluralPattern(String),
    #[error("template {0:?} is not a verb template")]
    NotAVerbTemplate(String),
    #[error("template {0:?} is not a nominal template")]
    NotNominal(String),
    #[error("unknown template {0:?}")]
    UnknownTemplate(String),
    #[error("invalid template {id:?}: {message}")]
    InvalidTemplate { id: String, message: String },
    #[error("inventory line {line}: {message}")]
    InventoryParse { line: usize, message: String },
    #[error("inventory must declare exactly 5 root-verb templates, found {0}")]
    RootVerbCount(usize),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// The ambiguity class recorded for a template.
pub fn ambiguity_of(template: &Template) -> AmbiguityClass {
    template.ambiguity
}

/// Segments with the metathesis letter moved after slot 1, when it directly precedes it.
fn metathesized(segments: &[Segment], letter: &str) -> Option<Vec<Segment>> {
    let mut out: Vec<Segment> = Vec::with_capacity(segments.len() + 1);
    let mut swapped = false;
    for seg in segments {
        match seg {
            Segment::Slot(1) => {
                if let Some(Segment::Fixed(prev)) = out.last_mut() {
                    if prev.last().map(String::as_str) == Some(letter) {
                        prev.pop();
                        if prev.is_empty() {
                            out.pop();
                        }
                        out.push(Segment::Slot(1));
                        out.push(Segment::Fixed(vec![letter.to_string()]));
                        swapped = true;
                        continue;
                    }
                }
                out.push(seg.clone());
            }
            _ => out.push(seg.clone()),
        }
    }
    swapped.then_some(out)
}

/// Position-wise alignment of base-letter symbols against segments.
fn align(symbols: &[String], segments: &[Segment], arity: usize) -> Option<Vec<String>> {
    let mut slots: Vec<Option<String>> = vec![None; arity];
    let mut pos = 0;
    for seg in segments {
        match seg {
            Segment::Fixed(letters) => {
                for l in letters {
                    if symbols.get(pos)? != l {
                        return None;
                    }
                    pos += 1;
                }
            }
            Segment::Slot(i) => {
                slots[i - 1] = Some(symbols.get(pos)?.clone());
                pos += 1;
            }
        }
    }
    if pos != symbols.len() {
        return None;
    }
    slots.into_iter().collect()
}

impl TemplateInventory {
    fn check_root(&self, root: &Root) -> Result<(), MorphologyError> {
        match root
            .consonants()
            .iter()
            .find(|c| !self.alphabet().is_letter(c))
        {
            Some(c) => Err(MorphologyError::UnknownLetter(c.clone())),
            None => Ok(()),
        }
    }

    /// Fills `pattern` with `root`, swapping the metathesis letter with a
    /// sibilant first consonant, and spells the result.
    pub fn realize(&self, pattern: &Pattern, root: &Root, metathesis: Option<&str>) -> String {
        let cons = root.consonants();
        let swap = metathesis.filter(|_| self.alphabet().is_sibilant(&cons[0]));
        let mut out: Vec<String> = Vec::new();
        for seg in pattern.segments() {
            match seg {
                Segment::Fixed(letters) => out.extend(letters.iter().cloned()),
                Segment::Slot(i) => {
                    let c = cons[i - 1].clone();
                    match swap {
                        Some(m) if *i == 1 && out.last().map(String::as_str) == Some(m) => {
                            let m = out.pop().expect("checked above");
                            out.push(c);
                            out.push(m);
                        }
                        _ => out.push(c),
                    }
                }
            }
        }
        self.alphabet().spell(&out)
    }

    fn variant_for<'t>(
        &self,
        template: &'t Template,
        root: &Root,
    ) -> Result<&'t PatternVariant, MorphologyError> {
        template
            .variant(root.len())
            .ok_or_else(|| MorphologyError::ArityMismatch {
                template: template.id.clone(),
                arity: root.len(),
            })
    }

    pub fn apply_template(
        &self,
        root: &Root,
        template: &Template,
    ) -> Result<SurfaceForm, MorphologyError> {
        let variant = self.variant_for(template, root)?;
        self.check_root(root)?;
        Ok(SurfaceForm {
            text: self.realize(&variant.pattern, root, template.metathesis.as_deref()),
            template_id: template.id.clone(),
            root: root.clone(),
        })
    }

    /// All roots `r` with `realize(pattern, r) == normalize(word)`.
    pub fn extract_roots_with(
        &self,
        word: &str,
        pattern: &Pattern,
        metathesis: Option<&str>,
    ) -> Vec<Root> {
        let Some(symbols) = self.alphabet().base_symbols(word) else {
            return Vec::new();
        };
        let target = self.alphabet().spell(&symbols);
        let mut alignments = vec![pattern.segments().to_vec()];
        if let Some(m) = metathesis {
            alignments.extend(metathesized(pattern.segments(), m));
        }
        let mut out: Vec<Root> = Vec::new();
        for segments in &alignments {
            let Some(consonants) = align(&symbols, segments, pattern.arity()) else {
                continue;
            };
            let Ok(root) = Root::new(consonants, self.alphabet()) else {
                continue;
            };
            if self.realize(pattern, &root, metathesis) == target && !out.contains(&root) {
                out.push(root);
            }
        }
        out
    }

    /// Every root that `template` maps onto `word`, across all its arity variants.
    /// An empty result means no parse.
    pub fn extract_roots(&self, word: &str, template: &Template) -> Vec<Root> {
        let mut out: Vec<Root> = Vec::new();
        for v in &template.variants {
            for r in self.extract_roots_with(word, &v.pattern, template.metathesis.as_deref()) {
                if !out.contains(&r) {
                    out.push(r);
                }
            }
        }
        out
    }

    /// Roots under which `word` is the `tag` inflection of `template`.
    pub fn extract_roots_inflected(&self, word: &str, template: &Template, tag: &str) -> Vec<Root> {
        let mut out: Vec<Root> = Vec::new();
        for v in &template.variants {
            for (t, p) in &v.inflections {
                if t != tag {
                    continue;
                }
                for r in self.extract_roots_with(word, p, template.metathesis.as_deref()) {
                    if !out.contains(&r) {
                        out.push(r);
                    }
                }
            }
        }
        out
    }

    /// The root a denominal verb is built on: the noun's root with the noun
    /// template's templatic consonant inserted where it surfaces in the noun.
    ///
    /// Only the first fixed occurrence of a templatic letter counts, so the
    /// feminine `-et` of `tiCCoCet` is not incorporated.
    pub fn denominal_root(&self, noun: &SurfaceForm) -> Result<Root, MorphologyError> {
        let template = self.require(&noun.template_id)?;
        if !template.pos.is_nominal() {
            return Err(MorphologyError::NotNominal(template.id.clone()));
        }
        if template.templatic_consonants.is_empty() {
            return Err(MorphologyError::NoTemplaticConsonant(template.id.clone()));
        }
        let variant = self.variant_for(template, &noun.root)?;
        let mut consonants = Vec::with_capacity(noun.root.len() + 1);
        let mut taken = false;
        for seg in variant.pattern.segments() {
            match seg {
                Segment::Slot(i) => consonants.push(noun.root.consonants()[i - 1].clone()),
                Segment::Fixed(letters) if !taken => {
                    if let Some(l) = letters
                        .iter()
                        .find(|l| template.templatic_consonants.contains(l))
                    {
                        consonants.push(l.clone());
                        taken = true;
                    }
                }
                Segment::Fixed(_) => {}
            }
        }
        Root::new(consonants, self.alphabet())
    }

    /// Plural of a noun. Suffix plurals attach to the de-finalized singular.
    pub fn pluralize(&self, noun: &SurfaceForm) -> Result<String, MorphologyError> {
        let template = self.require(&noun.template_id)?;
        let variant = self.variant_for(template, &noun.root)?;
        match &variant.plural {
            None => Err(MorphologyError::NoPluralPattern(template.id.clone())),
            Some(PluralPattern::Suffix(suffix)) => {
                let mut symbols = self
                    .alphabet()
                    .base_symbols(&noun.text)
                    .ok_or_else(|| MorphologyError::UnknownLetter(noun.text.clone()))?;
                symbols.extend(suffix.iter().cloned());
                Ok(self.alphabet().spell(&symbols))
            }
            Some(PluralPattern::Pattern(p)) => {
                Ok(self.realize(p, &noun.root, template.metathesis.as_deref()))
            }
        }
    }

    /// Applies the full plural pattern of `template` to `root` directly.
    pub fn apply_plural(
        &self,
        root: &Root,
        template: &Template,
    ) -> Result<String, MorphologyError> {
        let variant = self.variant_for(template, root)?;
        self.check_root(root)?;
        let pattern = variant
            .plural_pattern()
            .ok_or_else(|| MorphologyError::NoPluralPattern(template.id.clone()))?;
        Ok(self.realize(&pattern, root, template.metathesis.as_deref()))
    }

    /// All `(tag, form)` inflections of a verb template for `root`.
    pub fn inflect(
        &self,
        root: &Root,
        template: &Template,
    ) -> Result<Vec<(String, String)>, MorphologyError> {
        if !template.pos.is_verbal() {
            return Err(MorphologyError::NotAVerbTemplate(template.id.clone()));
        }
        let variant = self.variant_for(template, root)?;
        self.check_root(root)?;
        Ok(variant
            .inflections
            .iter()
            .map(|(tag, p)| {
                (
                    tag.clone(),
                    self.realize(p, root, template.metathesis.as_deref()),
                )
            })
            .collect())
    }
}
