//! Report serialization: JSON, CSV (one row per length), and bare
//! (n, value) plot data.

use crate::analyzers::balance::{BalanceProfile, DiscrepancyProfile};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmitFormat {
    Json,
    Csv,
    PlotData,
}

impl std::str::FromStr for EmitFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(EmitFormat::Json),
            "csv" => Ok(EmitFormat::Csv),
            "plotdata" => Ok(EmitFormat::PlotData),
            other => Err(Error::Parse(format!("unknown format '{other}'"))),
        }
    }
}

pub fn balance_csv(profile: &BalanceProfile) -> String {
    let mut out = String::from("n,balance\n");
    for (i, v) in profile.values.iter().enumerate() {
        out.push_str(&format!("{},{}\n", i + 1, v));
    }
    out
}

pub fn discrepancy_csv(profile: &DiscrepancyProfile) -> String {
    let mut out = String::from("n,discrepancy,signed_min,signed_max\n");
    for i in 0..profile.values.len() {
        out.push_str(&format!(
            "{},{},{},{}\n",
            i + 1,
            profile.values[i],
            profile.signed_min[i],
            profile.signed_max[i]
        ));
    }
    out
}

pub fn plot_data<V: std::fmt::Display>(values: &[V]) -> String {
    values
        .iter()
        .enumerate()
        .map(|(i, v)| format!("{} {v}\n", i + 1))
        .collect()
}
