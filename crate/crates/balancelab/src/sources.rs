//! Named built-in sources and the substitutions behind them.

use crate::error::{Error, Result};
use crate::morphisms::substitution::Substitution;
use crate::numeration::appendix::marker_substitution;
use crate::words::source::WordSource;

pub fn tribonacci_substitution() -> Substitution {
    Substitution::endomorphism("abc", &[("a", "ab"), ("b", "ac"), ("c", "a")])
        .expect("static rules")
}

pub fn fibonacci_substitution() -> Substitution {
    Substitution::endomorphism("01", &[("0", "01"), ("1", "0")]).expect("static rules")
}

pub fn thue_morse_substitution() -> Substitution {
    Substitution::endomorphism("01", &[("0", "01"), ("1", "10")]).expect("static rules")
}

pub fn period_doubling_substitution() -> Substitution {
    Substitution::endomorphism("01", &[("0", "01"), ("1", "00")]).expect("static rules")
}

pub fn chacon_substitution() -> Substitution {
    Substitution::endomorphism("012", &[("0", "0012"), ("1", "12"), ("2", "012")])
        .expect("static rules")
}

/// Built-in named sources.
pub const BUILTIN_SOURCES: &[&str] = &[
    "tribonacci",
    "fibonacci-word",
    "thue-morse",
    "period-doubling",
    "chacon",
    "appendix-b",
];

pub fn builtin_source(name: &str) -> Result<WordSource> {
    let source = match name {
        "tribonacci" => WordSource::fixed_point(tribonacci_substitution(), 0)?,
        "fibonacci-word" => WordSource::fixed_point(fibonacci_substitution(), 0)?,
        "thue-morse" => WordSource::fixed_point(thue_morse_substitution(), 0)?,
        "period-doubling" => WordSource::fixed_point(period_doubling_substitution(), 0)?,
        "chacon" => WordSource::fixed_point(chacon_substitution(), 0)?,
        "appendix-b" => WordSource::fixed_point(marker_substitution(), 0)?,
        other => {
            return Err(Error::Invalid(format!(
                "unknown source '{other}' (built-ins: {})",
                BUILTIN_SOURCES.join(", ")
            )))
        }
    };
    Ok(source.with_description(name.to_string()))
}
