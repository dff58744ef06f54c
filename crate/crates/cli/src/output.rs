//! Pinned output formats: sorted keys, 12-decimal fixed point.

use std::fmt::Display;

use kontext::valuations::ClassificationReport;
use kontext::{Contradiction, Diagram, RealizationReport, SampleRun, Valuation};
use serde::Serialize;
use serde_json::value::RawValue;

use crate::Format;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn new(code: u8, message: impl Display) -> Self {
        Self {
            code,
            message: message.to_string(),
        }
    }
}

pub fn fixed(x: f64) -> String {
    format!("{x:.12}")
}

fn number(x: f64) -> Box<RawValue> {
    RawValue::from_string(fixed(x)).expect("fixed-point decimals are valid JSON")
}

fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("output types serialize")
    );
}

// Field order below is alphabetical so JSON keys come out sorted.

#[derive(Serialize)]
struct ValidationOut {
    atoms: usize,
    blocks: usize,
    coordinatized: bool,
    dimension: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_residual: Option<Box<RawValue>>,
    valid: bool,
}

pub fn validation(format: Format, diagram: &Diagram, realization: Option<&RealizationReport>) {
    let out = ValidationOut {
        atoms: diagram.atoms().len(),
        blocks: diagram.blocks().len(),
        coordinatized: diagram.is_coordinatized(),
        dimension: diagram.dimension(),
        max_residual: realization.map(|r| number(r.max_residual)),
        valid: true,
    };
    match format {
        Format::Json => print_json(&out),
        Format::Table => {
            println!("atoms          {}", out.atoms);
            println!("blocks         {}", out.blocks);
            println!("coordinatized  {}", out.coordinatized);
            println!("dimension      {}", out.dimension);
            if let Some(r) = realization {
                println!("max_residual   {}", fixed(r.max_residual));
            }
            println!("valid          true");
        }
    }
}

pub fn count(format: Format, count: usize) {
    #[derive(Serialize)]
    struct CountOut {
        count: usize,
    }
    match format {
        Format::Json => print_json(&CountOut { count }),
        Format::Table => println!("{count}"),
    }
}

pub fn measures(format: Format, diagram: &Diagram, measures: &[Valuation]) {
    match format {
        Format::Json => print_json(&measures),
        Format::Table => {
            let mut ids: Vec<&str> = diagram.atoms().iter().map(|a| a.id.as_str()).collect();
            ids.sort_unstable();
            println!("{}", ids.join("\t"));
            for m in measures {
                let row: Vec<&str> = ids
                    .iter()
                    .map(|id| if m.get(id) == Some(true) { "1" } else { "0" })
                    .collect();
                println!("{}", row.join("\t"));
            }
        }
    }
}

pub fn classification(format: Format, report: &ClassificationReport) {
    match format {
        Format::Json => print_json(report),
        Format::Table => {
            for (id, status) in &report.statuses {
                let mark = match report.premises.get(id) {
                    Some(v) => format!("  (premise {})", u8::from(v)),
                    None => String::new(),
                };
                println!("{id}\t{status}{mark}");
            }
        }
    }
}

pub fn contradiction(format: Format, c: &Contradiction) {
    match format {
        // Through `Value`, whose maps are ordered by key.
        Format::Json => print_json(&serde_json::json!({ "contradiction": c })),
        Format::Table => println!("contradiction\t{}\t{}", c.block, c.atoms.join(",")),
    }
}

#[derive(Serialize)]
struct SampleOut<'a> {
    certified: bool,
    frequency: Box<RawValue>,
    n: usize,
    overlap: Box<RawValue>,
    seed: u64,
    tallies: &'a [u64],
    target_index: usize,
}

pub fn sample_run(format: Format, run: &SampleRun) {
    match format {
        Format::Json => print_json(&SampleOut {
            certified: run.certified,
            frequency: number(run.frequency),
            n: run.n,
            overlap: number(run.overlap),
            seed: run.seed,
            tallies: &run.tallies,
            target_index: run.target_index,
        }),
        Format::Table => {
            println!("certified     {}", run.certified);
            println!("frequency     {}", fixed(run.frequency));
            println!("n             {}", run.n);
            println!("overlap       {}", fixed(run.overlap));
            println!("seed          {}", run.seed);
            let tallies: Vec<String> = run.tallies.iter().map(u64::to_string).collect();
            println!("tallies       {}", tallies.join(" "));
            println!("target_index  {}", run.target_index);
        }
    }
}
