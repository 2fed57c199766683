//! Resolve command-line source specifications into word sources.

use balancelab::morphisms::io::parse_substitution;
use balancelab::morphisms::Substitution;
use balancelab::numeration::{Dfao, DfaoFile, NumerationSystem};
use balancelab::sadic::{ar_congenial, sturmian_sadic, ContinuedFraction, DirectiveSequence};
use balancelab::sources::builtin_source;
use balancelab::toeplitz::ToeplitzSpec;
use balancelab::words::WordSource;
use serde::Deserialize;

use crate::context::{CliError, CliResult};
use crate::SourceArgs;

fn content_tag(text: &str) -> String {
    let mut hash = 0xcbf29ce484222325u64;
    for b in text.as_bytes() {
        hash ^= *b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    format!("{hash:012x}")
}

fn read_file(path: &str) -> CliResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read '{path}': {e}")))
}

/// Inline text when it carries the expected marker, else file contents.
fn inline_or_file(value: &str, marker: &str) -> CliResult<String> {
    if value.contains(marker) {
        Ok(value.replace(';', "\n"))
    } else {
        read_file(value)
    }
}

pub fn seed_index(sub: &Substitution, requested: Option<&str>, from_file: Option<&str>) -> CliResult<u32> {
    let name = requested.or(from_file);
    match name {
        Some(name) => Ok(sub.source_alphabet().index_of(name)?),
        None => Ok(0),
    }
}

pub fn fixed_point_from_rules(
    text: &str,
    seed_letter: Option<&str>,
) -> CliResult<WordSource> {
    let (sub, file_seed) = parse_substitution(text)?;
    let seed = seed_index(&sub, seed_letter, file_seed.as_deref())?;
    let tag = content_tag(text);
    Ok(WordSource::fixed_point(sub, seed)?
        .with_description(format!("fixed-point:{tag}:seed{seed}")))
}

pub fn sturmian_source(cf_text: &str) -> CliResult<WordSource> {
    let cf = ContinuedFraction::parse(cf_text)?;
    let source = WordSource::sadic_limit(sturmian_sadic(&cf)?)?;
    Ok(source.with_description(format!("sturmian:{cf}")))
}

pub fn directive_source(
    directive: &str,
    seed_letter: Option<&str>,
) -> CliResult<(WordSource, DirectiveSequence, Vec<String>)> {
    let text = inline_or_file(directive, "letters:")?;
    let ds = DirectiveSequence::parse(&text)?;
    let seed = match seed_letter {
        Some(name) => ds.alphabet().index_of(name)?,
        None => 0,
    };
    let (cs, warnings) = ar_congenial(&ds, seed)?;
    let source = WordSource::sadic_limit(cs)?
        .with_description(format!("directive:{}", content_tag(&text)));
    Ok((source, ds, warnings))
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SpecFile {
    Pd,
    Exp {
        l0: u64,
        k: Vec<u64>,
        #[serde(default)]
        depth: Option<usize>,
    },
    Explicit {
        alphabet: Vec<String>,
        levels: Vec<Vec<Vec<u64>>>,
        #[serde(default)]
        repeat: bool,
    },
}

pub fn toeplitz_spec_from_file(path: &str, rng_seed: u64) -> CliResult<ToeplitzSpec> {
    let text = read_file(path)?;
    let file: SpecFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Validation(format!("tower spec '{path}': {e}")))?;
    let spec = match file {
        SpecFile::Pd => ToeplitzSpec::period_doubling(),
        SpecFile::Exp { l0, mut k, depth } => {
            if let Some(depth) = depth {
                if depth == 0 {
                    return Err(CliError::Validation("depth must be positive".into()));
                }
                let last = *k.last().ok_or_else(|| {
                    CliError::Validation("need at least one block size".into())
                })?;
                k.resize(depth, last);
            }
            balancelab::toeplitz::exp_spec(l0, k, rng_seed)?
        }
        SpecFile::Explicit { alphabet, levels, repeat } => ToeplitzSpec::explicit(
            balancelab::words::Alphabet::new(alphabet)?,
            levels,
            repeat,
        )?,
    };
    Ok(spec)
}

pub fn dfao_from_file(path: &str) -> CliResult<(Dfao, NumerationSystem)> {
    let text = read_file(path)?;
    let file: DfaoFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Validation(format!("automaton spec '{path}': {e}")))?;
    let numeration = file.numeration.unwrap_or(NumerationSystem::Fibonacci);
    Ok((Dfao::from_file(&file)?, numeration))
}

/// Resolve the shared source flags into a word source.
pub fn resolve(args: &SourceArgs, rng_seed: u64) -> CliResult<WordSource> {
    let given = [
        args.source.is_some(),
        args.sub.is_some(),
        args.cf.is_some(),
        args.directive.is_some(),
        args.spec.is_some(),
    ]
    .iter()
    .filter(|&&x| x)
    .count();
    if given != 1 {
        return Err(CliError::Validation(
            "give exactly one of --source, --sub, --cf, --directive, --spec".into(),
        ));
    }
    if let Some(name) = &args.source {
        if balancelab::sources::BUILTIN_SOURCES.contains(&name.as_str()) {
            return Ok(builtin_source(name)?);
        }
        // A word file: the explicit symbols become the source.
        let text = read_file(name)?;
        let word = balancelab::words::io::read_word(&text)?;
        return Ok(WordSource::explicit(word)
            .with_description(format!("wordfile:{}", content_tag(&text))));
    }
    if let Some(path) = &args.sub {
        let text = inline_or_file(path, "->")?;
        return fixed_point_from_rules(&text, args.seed_letter.as_deref());
    }
    if let Some(cf) = &args.cf {
        return sturmian_source(cf);
    }
    if let Some(directive) = &args.directive {
        let (source, _, warnings) = directive_source(directive, args.seed_letter.as_deref())?;
        for warning in warnings {
            eprintln!("warning: {warning}");
        }
        return Ok(source);
    }
    if let Some(path) = &args.spec {
        // Try the automaton format first, then the tower format.
        let text = read_file(path)?;
        if let Ok(file) = serde_json::from_str::<DfaoFile>(&text) {
            let numeration = file.numeration.unwrap_or(NumerationSystem::Fibonacci);
            let dfao = Dfao::from_file(&file)?;
            return Ok(WordSource::dfao(dfao, numeration)?
                .with_description(format!("dfao:{}", content_tag(&text))));
        }
        let spec = toeplitz_spec_from_file(path, rng_seed)?;
        return Ok(WordSource::toeplitz(spec)
            .with_description(format!("toeplitz:{}", content_tag(&text))));
    }
    unreachable!("argument count checked above")
}
