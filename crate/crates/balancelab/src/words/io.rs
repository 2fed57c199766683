//! Word text format: a header line `alphabet: s0 s1 ...`, an optional
//! `compact: true` line, then the symbols (whitespace-separated, or
//! unseparated in compact form).

use crate::error::{Error, Result};
use crate::words::alphabet::Alphabet;
use crate::words::word::FiniteWord;

pub fn write_word(word: &FiniteWord) -> String {
    let alphabet = word.alphabet();
    let compact = alphabet.is_compact();
    let mut out = format!("alphabet: {}\n", alphabet);
    if compact {
        out.push_str("compact: true\n");
        out.push_str(&word.render());
    } else {
        out.push_str(&word.render());
    }
    out.push('\n');
    out
}

pub fn read_word(text: &str) -> Result<FiniteWord> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty word file".into()))?
        .trim();
    let names = header
        .strip_prefix("alphabet:")
        .ok_or_else(|| Error::Parse("expected 'alphabet:' header".into()))?;
    let alphabet = Alphabet::new(names.split_whitespace().collect::<Vec<_>>())?;
    let mut compact = false;
    let mut body = String::new();
    for line in lines {
        let trimmed = line.trim();
        if let Some(flag) = trimmed.strip_prefix("compact:") {
            compact = flag.trim() == "true";
            continue;
        }
        if !body.is_empty() {
            body.push(' ');
        }
        body.push_str(trimmed);
    }
    if compact && !alphabet.is_compact() {
        return Err(Error::Parse(
            "compact form declared over a multi-character alphabet".into(),
        ));
    }
    if compact {
        let symbols = body
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| alphabet.index_of(&c.to_string()))
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteWord::new(alphabet, symbols)?)
    } else {
        FiniteWord::parse(&alphabet, &body)
    }
}
