//! Substitution file formats: the rule-per-line text form and the JSON
//! equivalent `{"rules": {...}, "seed": "..."}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::morphisms::substitution::Substitution;

#[derive(Debug, Serialize, Deserialize)]
pub struct SubstitutionFile {
    /// letter -> image text; "." denotes the empty image. Iteration order
    /// of the map fixes the alphabet order.
    pub rules: BTreeMap<String, String>,
    #[serde(default)]
    pub seed: Option<String>,
}

/// Parse either the JSON object form or the plain `letter -> image` text.
pub fn parse_substitution(text: &str) -> Result<(Substitution, Option<String>)> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let file: SubstitutionFile = serde_json::from_str(trimmed)
            .map_err(|e| Error::Parse(format!("substitution json: {e}")))?;
        let rules: Vec<(String, String)> = file
            .rules
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        Ok((Substitution::from_named_rules(&rules)?, file.seed))
    } else {
        Ok((Substitution::parse(text)?, None))
    }
}

pub fn write_substitution_json(sub: &Substitution, seed: Option<&str>) -> String {
    let alphabet = sub.source_alphabet();
    let rules: BTreeMap<String, String> = (0..alphabet.size() as u32)
        .map(|a| {
            let image = sub.image_word(a);
            let rhs = if image.is_empty() { ".".into() } else { image.render() };
            (alphabet.name(a).to_string(), rhs)
        })
        .collect();
    let file = SubstitutionFile { rules, seed: seed.map(String::from) };
    serde_json::to_string_pretty(&file).expect("map of strings")
}
