//! Deterministic finite automata with output, evaluated on positional
//! representations to produce automatic sequences.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::morphisms::substitution::Substitution;
use crate::numeration::system::NumerationSystem;
use crate::words::alphabet::Alphabet;

/// An automaton over digits {0, 1} with an output letter per state.
/// Transitions may be partial where the numeration forbids the digit.
#[derive(Debug, Clone)]
pub struct Dfao {
    state_names: Vec<String>,
    initial: u32,
    /// `transitions[state][digit]`, `None` where undefined.
    transitions: Vec<[Option<u32>; 2]>,
    /// Output letter per state, over `output_alphabet`.
    outputs: Vec<u32>,
    output_alphabet: Arc<Alphabet>,
}

/// Serde mirror of the on-disk format.
#[derive(Debug, Serialize, Deserialize)]
pub struct DfaoFile {
    pub states: Vec<String>,
    pub initial: String,
    pub transitions: HashMap<String, HashMap<String, String>>,
    pub output: HashMap<String, String>,
    #[serde(default)]
    pub numeration: Option<NumerationSystem>,
}

impl Dfao {
    pub fn new(
        state_names: Vec<String>,
        initial: &str,
        transitions: &[(String, u8, String)],
        outputs: &[(String, String)],
    ) -> Result<Self> {
        let index: HashMap<&str, u32> = state_names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i as u32))
            .collect();
        if index.len() != state_names.len() {
            return Err(Error::Invalid("duplicate state names".into()));
        }
        let initial = *index
            .get(initial)
            .ok_or_else(|| Error::UnknownSymbol(initial.to_string()))?;
        let mut table = vec![[None, None]; state_names.len()];
        for (from, digit, to) in transitions {
            if *digit > 1 {
                return Err(Error::InvalidDigits(format!("digit {digit}")));
            }
            let f = *index
                .get(from.as_str())
                .ok_or_else(|| Error::UnknownSymbol(from.clone()))?;
            let t = *index
                .get(to.as_str())
                .ok_or_else(|| Error::UnknownSymbol(to.clone()))?;
            table[f as usize][*digit as usize] = Some(t);
        }
        let mut output_names: Vec<String> = Vec::new();
        let mut by_state: HashMap<u32, String> = HashMap::new();
        for (state, letter) in outputs {
            let s = *index
                .get(state.as_str())
                .ok_or_else(|| Error::UnknownSymbol(state.clone()))?;
            if !output_names.contains(letter) {
                output_names.push(letter.clone());
            }
            by_state.insert(s, letter.clone());
        }
        if by_state.len() != state_names.len() {
            return Err(Error::Invalid("missing output for some state".into()));
        }
        let output_alphabet = Alphabet::new(output_names)?;
        let outputs = (0..state_names.len() as u32)
            .map(|s| output_alphabet.index_of(&by_state[&s]))
            .collect::<Result<Vec<_>>>()?;
        Ok(Dfao { state_names, initial, transitions: table, outputs, output_alphabet })
    }

    pub fn from_file(file: &DfaoFile) -> Result<Self> {
        let mut transitions = Vec::new();
        for (from, by_digit) in &file.transitions {
            for (digit, to) in by_digit {
                let d: u8 = digit
                    .parse()
                    .map_err(|_| Error::InvalidDigits(format!("digit '{digit}'")))?;
                transitions.push((from.clone(), d, to.clone()));
            }
        }
        // Walk outputs in declared state order so the interned output
        // alphabet is deterministic.
        let outputs: Vec<(String, String)> = file
            .states
            .iter()
            .map(|s| {
                file.output
                    .get(s)
                    .map(|o| (s.clone(), o.clone()))
                    .ok_or_else(|| Error::Invalid(format!("missing output for state '{s}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Dfao::new(file.states.clone(), &file.initial, &transitions, &outputs)
    }

    pub fn to_file(&self, numeration: NumerationSystem) -> DfaoFile {
        let mut transitions: HashMap<String, HashMap<String, String>> = HashMap::new();
        for (s, row) in self.transitions.iter().enumerate() {
            let mut by_digit = HashMap::new();
            for (d, target) in row.iter().enumerate() {
                if let Some(t) = target {
                    by_digit.insert(d.to_string(), self.state_names[*t as usize].clone());
                }
            }
            transitions.insert(self.state_names[s].clone(), by_digit);
        }
        DfaoFile {
            states: self.state_names.clone(),
            initial: self.state_names[self.initial as usize].clone(),
            transitions,
            output: self
                .state_names
                .iter()
                .enumerate()
                .map(|(s, name)| {
                    (name.clone(), self.output_alphabet.name(self.outputs[s]).to_string())
                })
                .collect(),
            numeration: Some(numeration),
        }
    }

    pub fn output_alphabet(&self) -> &Arc<Alphabet> {
        &self.output_alphabet
    }

    pub fn state_count(&self) -> usize {
        self.state_names.len()
    }

    /// Run on a most-significant-first digit word from the initial state.
    pub fn run(&self, digits: &[u8]) -> Result<u32> {
        let mut state = self.initial;
        for &d in digits {
            state = self.transitions[state as usize][d as usize].ok_or_else(|| {
                Error::UndefinedTransition {
                    state: self.state_names[state as usize].clone(),
                    digit: d,
                }
            })?;
        }
        Ok(state)
    }

    /// Output letter at index `n` of the generated word: the empty
    /// representation (n = 0) reads off the initial state.
    pub fn letter_at(&self, ns: NumerationSystem, n: u64) -> Result<u32> {
        let digits = ns.to_representation(n);
        Ok(self.outputs[self.run(&digits)? as usize])
    }

    /// Check that every digit the numeration can present is defined, by
    /// walking the product with the digit-context automaton (context:
    /// whether the previous digit was a one, and how long the current
    /// one-run is).
    pub fn validate_total(&self, ns: NumerationSystem) -> Result<()> {
        let max_run = ns.max_one_run();
        let mut seen = vec![[false; 4]; self.state_count()];
        // Start contexts: at the first digit the representation begins with
        // a one; we also allow reading leading zeros (context run = 0).
        let mut stack = vec![(self.initial, 0usize)];
        seen[self.initial as usize][0] = true;
        while let Some((state, run)) = stack.pop() {
            for digit in 0..=1u8 {
                if digit == 1 && run >= max_run {
                    continue;
                }
                let next_run = if digit == 1 { run + 1 } else { 0 };
                match self.transitions[state as usize][digit as usize] {
                    Some(next) => {
                        if !seen[next as usize][next_run] {
                            seen[next as usize][next_run] = true;
                            stack.push((next, next_run));
                        }
                    }
                    None => {
                        return Err(Error::UndefinedTransition {
                            state: self.state_names[state as usize].clone(),
                            digit,
                        })
                    }
                }
            }
        }
        Ok(())
    }
}

/// Build the automaton dual to a substitution with image lengths 1 or 2:
/// digit 0 moves to the first letter of the image, digit 1 to the second.
/// States with one-letter images must only be reachable where the
/// numeration forbids a further one; this is validated against the digit
/// contexts that valid representations can produce.
pub fn dfao_from_substitution(
    psi: &Substitution,
    outputs: &[(String, String)],
    ns: NumerationSystem,
) -> Result<Dfao> {
    if !psi.is_endomorphism() {
        return Err(Error::Invalid("state substitution must be an endomorphism".into()));
    }
    let states = psi.source_alphabet();
    let mut transitions = Vec::new();
    for s in 0..states.size() as u32 {
        let image = psi.image(s);
        if image.is_empty() || image.len() > 2 {
            return Err(Error::Invalid(format!(
                "state '{}' must have an image of length 1 or 2",
                states.name(s)
            )));
        }
        transitions.push((
            states.name(s).to_string(),
            0u8,
            states.name(image[0]).to_string(),
        ));
        if image.len() == 2 {
            transitions.push((
                states.name(s).to_string(),
                1u8,
                states.name(image[1]).to_string(),
            ));
        }
    }
    let dfao = Dfao::new(
        states.names().to_vec(),
        states.name(0),
        &transitions,
        outputs,
    )?;
    dfao.validate_total(ns)?;
    Ok(dfao)
}
