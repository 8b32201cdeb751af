//! Built-in example corpus with golden JSON reports.

use std::path::Path;

use serde::Serialize;

use crate::{analyze_command, genus_command, veronese_command, Failure, Flags, Output};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Analyze,
    Genus,
    Veronese(u32),
}

#[derive(Clone, Copy, Debug)]
pub struct Entry {
    pub name: &'static str,
    pub kind: Kind,
    pub input: &'static str,
    pub golden: &'static str,
}

macro_rules! entry {
    ($name:literal, $kind:expr, $input:literal) => {
        Entry {
            name: $name,
            kind: $kind,
            input: $input,
            golden: include_str!(concat!("../golden/", $name, ".json")),
        }
    };
}

pub const ENTRIES: &[Entry] = &[
    entry!("fermat_cubic", Kind::Analyze, "x^3 + y^3 + z^3 - 1"),
    entry!("paraboloid", Kind::Analyze, "x^2 + y^2 - z"),
    entry!("sphere", Kind::Analyze, "x^2 + y^2 + z^2 - 1"),
    entry!("hyperboloid", Kind::Analyze, "x^2 + y^2 - z^2 - 1"),
    entry!("hyperbolic_paraboloid", Kind::Analyze, "x*y - z"),
    entry!("cone", Kind::Analyze, "x^2 + y^2 - z^2"),
    entry!("fermat_cubic_curve", Kind::Genus, "x^3 + y^3 + z^3"),
    entry!("nodal_cubic", Kind::Genus, "y^2*z - x^2*(x + z)"),
    entry!("cuspidal_cubic", Kind::Genus, "y^2*z - x^3"),
    entry!("conjugate_lines", Kind::Genus, "x^2 + y^2"),
    entry!("veronese_d2_line", Kind::Veronese(2), "x1"),
    entry!("veronese_d2_skew_line", Kind::Veronese(2), "x1 - x2"),
    entry!("veronese_d3_conic", Kind::Veronese(3), "x1^2 + x2^2 - x0^2"),
];

impl Kind {
    pub fn command(self) -> String {
        match self {
            Kind::Analyze => "analyze".into(),
            Kind::Genus => "genus".into(),
            Kind::Veronese(d) => format!("veronese --degree {d}"),
        }
    }
}

/// Machine-readable output of an entry under the canonical flags.
pub fn entry_output(entry: &Entry) -> Result<Output, Failure> {
    let flags = Flags {
        json: true,
        ..Flags::default()
    };
    match entry.kind {
        Kind::Analyze => analyze_command(entry.input, &flags),
        Kind::Genus => genus_command(entry.input, &flags),
        Kind::Veronese(d) => veronese_command(d, entry.input, &flags),
    }
}

#[derive(Serialize)]
struct EntryResult {
    name: &'static str,
    command: String,
    input: &'static str,
    matches_golden: bool,
    output: serde_json::Value,
}

pub fn run_corpus(flags: &Flags, update: Option<&Path>) -> Result<Output, Failure> {
    let mut results = Vec::new();
    for e in ENTRIES {
        let out = entry_output(e)?;
        if let Some(dir) = update {
            let path = dir.join(format!("{}.json", e.name));
            std::fs::write(&path, &out.text).map_err(|err| Failure {
                code: "E_IO",
                message: format!("cannot write {}: {err}", path.display()),
            })?;
        }
        let matches = update.is_some() || (out.ok && out.text == e.golden);
        results.push(EntryResult {
            name: e.name,
            command: e.kind.command(),
            input: e.input,
            matches_golden: matches,
            output: serde_json::from_str(&out.text).expect("commands emit JSON"),
        });
    }
    let ok = results.iter().all(|r| r.matches_golden);
    let text = if flags.json {
        serde_json::to_string_pretty(&results).expect("serializable") + "\n"
    } else {
        let mut s = String::new();
        for r in &results {
            let status = if r.matches_golden { "ok" } else { "MISMATCH" };
            let summary = r
                .output
                .get("verdict")
                .and_then(|v| v.as_str())
                .map(str::to_string)
                .or_else(|| {
                    r.output.get("components").map(|c| {
                        let g: Vec<String> = c
                            .as_array()
                            .into_iter()
                            .flatten()
                            .map(|c| c["genus"]["genus"].to_string())
                            .collect();
                        format!("genus {}", g.join(", "))
                    })
                })
                .or_else(|| {
                    r.output
                        .pointer("/verification/passed")
                        .map(|p| format!("verified {p}"))
                })
                .unwrap_or_default();
            s += &format!("{status:<9}{:<24}{} \"{}\" -> {summary}\n", r.name, r.command, r.input);
        }
        s += &format!(
            "{} of {} entries match\n",
            results.iter().filter(|r| r.matches_golden).count(),
            results.len()
        );
        s
    };
    Ok(Output { text, ok })
}
