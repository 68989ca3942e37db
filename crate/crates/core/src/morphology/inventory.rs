//! Template inventory files.
//!
//! One pattern variant per line, seven tab-separated columns:
//!
//! ```text
//! id  pos  pattern  arities  templatic  ambiguity  flags
//! ```
//!
//! `pattern` uses `{i}` for the i-th root consonant. Variants of one template
//! (e.g. a 3- and a 4-consonant shape) are separate lines sharing the `id`.
//! Empty optional fields are written as `-`. `flags` is a `;`-separated list:
//!
//! - `denominal=<id>,<id>`: denominal verb templates fed by this nominal template
//! - `root_verb`: one of the infinitival templates for root-derived verbs
//! - `lookup=plural`: nouns of this template are embedded in their plural form
//! - `metathesis=<letter>`: the letter swaps with a sibilant first consonant
//! - `plural=+<suffix>` or `plural=<pattern>`
//! - `infl.<tag>=<pattern>`: an inflected form of a verb template
//!
//! Template-level flags (`denominal`, `root_verb`, `lookup`, `metathesis`) may
//! appear on any line of a template and are written on its first line.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use super::template::{AmbiguityClass, Pattern, PatternVariant, PluralPattern, Pos, Template};
use super::{Alphabet, MorphologyError};

/// Number of infinitival root-verb templates an inventory must declare.
pub const ROOT_VERB_TEMPLATE_COUNT: usize = 5;

#[derive(Debug, Clone, PartialEq)]
pub struct TemplateInventory {
    alphabet: Alphabet,
    templates: Vec<Template>,
    index: HashMap<String, usize>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> MorphologyError {
    MorphologyError::InventoryParse {
        line,
        message: msg.into(),
    }
}

impl TemplateInventory {
    pub fn load(path: impl AsRef<Path>, alphabet: Alphabet) -> Result<Self, MorphologyError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| MorphologyError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        Self::parse(&text, alphabet)
    }

    pub fn parse(text: &str, alphabet: Alphabet) -> Result<Self, MorphologyError> {
        let mut templates: Vec<Template> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            if raw.trim().is_empty() || raw.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = raw.split('\t').collect();
            if cols.len() != 7 {
                return Err(parse_err(
                    line_no,
                    format!("expected 7 columns, found {}", cols.len()),
                ));
            }
            let id = cols[0].trim();
            if id.is_empty() || id == "-" {
                return Err(parse_err(line_no, "empty template id"));
            }
            let pos: Pos = cols[1].parse().map_err(|e: String| parse_err(line_no, e))?;
            let pattern = Pattern::parse(cols[2], &alphabet).map_err(|e| parse_err(line_no, e))?;
            let arities = parse_list(cols[3])
                .into_iter()
                .map(|a| {
                    a.parse::<usize>()
                        .map_err(|_| parse_err(line_no, format!("bad arity {a:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if !arities.contains(&pattern.arity()) {
                return Err(parse_err(
                    line_no,
                    format!(
                        "pattern has {} slots but arities are {arities:?}",
                        pattern.arity()
                    ),
                ));
            }
            let templatic = parse_list(cols[4])
                .into_iter()
                .map(|l| {
                    let base = alphabet.base_form(l).to_string();
                    if alphabet.is_letter(&base) {
                        Ok(base)
                    } else {
                        Err(parse_err(
                            line_no,
                            format!("templatic letter {l:?} not in alphabet"),
                        ))
                    }
                })
                .collect::<Result<Vec<_>, _>>()?;
            let ambiguity: AmbiguityClass =
                cols[5].parse().map_err(|e: String| parse_err(line_no, e))?;

            let mut variant = PatternVariant {
                pattern,
                plural: None,
                inflections: Vec::new(),
            };
            let mut tflags = TemplateFlags::default();
            for flag in parse_flags(cols[6]) {
                apply_flag(flag, &alphabet, &mut variant, &mut tflags)
                    .map_err(|e| parse_err(line_no, e))?;
            }

            match index.get(id) {
                Some(&i) => {
                    let t = &mut templates[i];
                    if t.pos != pos
                        || t.templatic_consonants != templatic
                        || t.ambiguity != ambiguity
                    {
                        return Err(parse_err(
                            line_no,
                            format!("variant of {id:?} disagrees on pos, templatic letters or ambiguity"),
                        ));
                    }
                    if t.supports_arity(variant.arity()) {
                        return Err(parse_err(
                            line_no,
                            format!("{id:?} already has a {}-slot variant", variant.arity()),
                        ));
                    }
                    tflags.merge_into(t).map_err(|e| parse_err(line_no, e))?;
                    t.variants.push(variant);
                }
                None => {
                    let mut t = Template {
                        id: id.to_string(),
                        pos,
                        variants: vec![variant],
                        templatic_consonants: templatic,
                        ambiguity,
                        metathesis: None,
                        denominal_targets: Vec::new(),
                        root_verb: false,
                        lookup_plural: false,
                    };
                    tflags
                        .merge_into(&mut t)
                        .map_err(|e| parse_err(line_no, e))?;
                    index.insert(id.to_string(), templates.len());
                    templates.push(t);
                }
            }
        }

        let inv = Self {
            alphabet,
            templates,
            index,
        };
        inv.validate()?;
        Ok(inv)
    }

    fn validate(&self) -> Result<(), MorphologyError> {
        let invalid = |id: &str, msg: String| MorphologyError::InvalidTemplate {
            id: id.to_string(),
            message: msg,
        };
        for t in &self.templates {
            for v in &t.variants {
                for l in &t.templatic_consonants {
                    if !v.pattern.fixed_letters().any(|f| f == l) {
                        return Err(invalid(
                            &t.id,
                            format!("templatic letter {l:?} is not a fixed letter"),
                        ));
                    }
                }
                if v.plural.is_some() && !t.pos.is_nominal() {
                    return Err(invalid(&t.id, "plural pattern on a verb template".into()));
                }
                if !v.inflections.is_empty() && !t.pos.is_verbal() {
                    return Err(invalid(&t.id, "inflections on a nominal template".into()));
                }
                for (tag, p) in &v.inflections {
                    if p.arity() != v.arity() {
                        return Err(invalid(
                            &t.id,
                            format!("inflection {tag:?} has a different arity"),
                        ));
                    }
                }
                if let Some(PluralPattern::Pattern(p)) = &v.plural {
                    if p.arity() != v.arity() {
                        return Err(invalid(
                            &t.id,
                            "plural pattern has a different arity".into(),
                        ));
                    }
                }
            }
            if !t.denominal_targets.is_empty() && !t.pos.is_nominal() {
                return Err(invalid(
                    &t.id,
                    "denominal mapping on a verb template".into(),
                ));
            }
            for target in &t.denominal_targets {
                match self.template(target) {
                    None => return Err(MorphologyError::UnknownTemplate(target.clone())),
                    Some(d) if d.pos != Pos::VerbInfinitive => {
                        return Err(invalid(
                            target,
                            "denominal target is not an infinitive".into(),
                        ))
                    }
                    Some(_) => {}
                }
            }
            if t.root_verb && t.pos != Pos::VerbInfinitive {
                return Err(invalid(
                    &t.id,
                    "root-verb template is not an infinitive".into(),
                ));
            }
        }
        let n_root = self.templates.iter().filter(|t| t.root_verb).count();
        if n_root != ROOT_VERB_TEMPLATE_COUNT {
            return Err(MorphologyError::RootVerbCount(n_root));
        }
        Ok(())
    }

    /// Serializes the inventory in the canonical line format.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for t in &self.templates {
            for (i, v) in t.variants.iter().enumerate() {
                let mut flags: Vec<String> = Vec::new();
                if i == 0 {
                    if !t.denominal_targets.is_empty() {
                        flags.push(format!("denominal={}", t.denominal_targets.join(",")));
                    }
                    if t.root_verb {
                        flags.push("root_verb".into());
                    }
                    if t.lookup_plural {
                        flags.push("lookup=plural".into());
                    }
                    if let Some(m) = &t.metathesis {
                        flags.push(format!("metathesis={m}"));
                    }
                }
                match &v.plural {
                    Some(PluralPattern::Suffix(s)) => {
                        flags.push(format!("plural=+{}", self.alphabet.spell(s)))
                    }
                    Some(PluralPattern::Pattern(p)) => {
                        flags.push(format!("plural={}", p.render(&self.alphabet)))
                    }
                    None => {}
                }
                for (tag, p) in &v.inflections {
                    flags.push(format!("infl.{tag}={}", p.render(&self.alphabet)));
                }
                let templatic = if t.templatic_consonants.is_empty() {
                    "-".to_string()
                } else {
                    t.templatic_consonants.join(",")
                };
                let ambiguity = match t.ambiguity {
                    AmbiguityClass::Unambiguous => "-",
                    other => other.as_str(),
                };
                let flags = if flags.is_empty() {
                    "-".to_string()
                } else {
                    flags.join(";")
                };
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                    t.id,
                    t.pos.as_str(),
                    v.pattern.render(&self.alphabet),
                    v.arity(),
                    templatic,
                    ambiguity,
                    flags
                ));
            }
        }
        out
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn templates(&self) -> &[Template] {
        &self.templates
    }

    pub fn template(&self, id: &str) -> Option<&Template> {
        self.index.get(id).map(|&i| &self.templates[i])
    }

    pub fn require(&self, id: &str) -> Result<&Template, MorphologyError> {
        self.template(id)
            .ok_or_else(|| MorphologyError::UnknownTemplate(id.to_string()))
    }

    pub fn nominal_templates(&self) -> impl Iterator<Item = &Template> {
        self.templates.iter().filter(|t| t.pos.is_nominal())
    }

    /// Nominal template id → denominal verb template ids, in file order.
    pub fn denominal_map(&self) -> impl Iterator<Item = (&str, &[String])> {
        self.templates
            .iter()
            .filter(|t| !t.denominal_targets.is_empty())
            .map(|t| (t.id.as_str(), t.denominal_targets.as_slice()))
    }

    pub fn root_verb_templates(&self) -> impl Iterator<Item = &Template> {
        self.templates.iter().filter(|t| t.root_verb)
    }
}

fn parse_list(field: &str) -> Vec<&str> {
    let field = field.trim();
    if field.is_empty() || field == "-" {
        return Vec::new();
    }
    field
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect()
}

fn parse_flags(field: &str) -> impl Iterator<Item = &str> {
    let field = field.trim();
    let field = if field == "-" { "" } else { field };
    field.split(';').map(str::trim).filter(|s| !s.is_empty())
}

#[derive(Default)]
struct TemplateFlags {
    denominal: Vec<String>,
    root_verb: bool,
    lookup_plural: bool,
    metathesis: Option<String>,
}

impl TemplateFlags {
    fn merge_into(self, t: &mut Template) -> Result<(), String> {
        for d in self.denominal {
            if !t.denominal_targets.contains(&d) {
                t.denominal_targets.push(d);
            }
        }
        t.root_verb |= self.root_verb;
        t.lookup_plural |= self.lookup_plural;
        if let Some(m) = self.metathesis {
            match &t.metathesis {
                Some(prev) if *prev != m => {
                    return Err(format!("conflicting metathesis letters {prev:?} and {m:?}"))
                }
                _ => t.metathesis = Some(m),
            }
        }
        Ok(())
    }
}

fn apply_flag(
    flag: &str,
    alphabet: &Alphabet,
    variant: &mut PatternVariant,
    tflags: &mut TemplateFlags,
) -> Result<(), String> {
    let (key, value) = match flag.split_once('=') {
        Some((k, v)) => (k.trim(), Some(v.trim())),
        None => (flag, None),
    };
    match (key, value) {
        ("root_verb", None) => tflags.root_verb = true,
        ("lookup", Some("plural")) => tflags.lookup_plural = true,
        ("lookup", Some("singular")) => {}
        ("denominal", Some(v)) => tflags
            .denominal
            .extend(parse_list(v).into_iter().map(String::from)),
        ("metathesis", Some(v)) => {
            let base = alphabet.base_form(v).to_string();
            if !alphabet.is_letter(&base) {
                return Err(format!("metathesis letter {v:?} not in alphabet"));
            }
            tflags.metathesis = Some(base);
        }
        ("plural", Some(v)) => {
            variant.plural = Some(match v.strip_prefix('+') {
                Some(suffix) => PluralPattern::Suffix(
                    alphabet
                        .base_symbols(suffix)
                        .filter(|s| !s.is_empty())
                        .ok_or_else(|| format!("bad plural suffix {suffix:?}"))?,
                ),
                None => PluralPattern::Pattern(Pattern::parse(v, alphabet)?),
            });
        }
        (k, Some(v)) if k.starts_with("infl.") => {
            let tag = &k["infl.".len()..];
            if tag.is_empty() {
                return Err("empty inflection tag".into());
            }
            variant
                .inflections
                .push((tag.to_string(), Pattern::parse(v, alphabet)?));
        }
        _ => return Err(format!("unknown flag {flag:?}")),
    }
    Ok(())
}
