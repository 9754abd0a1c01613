//! Commands behind the `flathom` binary.
//!
//! Each `cmd_*` function takes the text of an input file and returns the
//! rendered report, so the commands can be driven without touching the file
//! system. Negative findings (failed checks, fixed points, a `not-open`
//! verdict) are part of a successful report; only malformed input is an
//! error.

pub mod format;
pub mod report;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::fixpoint::DEFAULT_WORD_LENGTH;
use crate::isogrp::GroupPresentation;

pub use format::{ConstructorFile, GeneratorEntry, GroupFile, LatticeSpec, LieFile, MatrixKind};
pub use report::{
    AnalysisReport, CentralizerSection, ClassificationSection, FixedPointSection, SpaceSection, StructureSection,
    ValidationSection, SCHEMA,
};

use report::{choose_frame, envelope, FrameSection, Section};

/// Which Witt frame the block data is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FrameChoice {
    /// Computed from `U₀`.
    #[default]
    Auto,
    /// The coordinate basis, which must already be a Witt basis adapted to
    /// `U₀`.
    Given,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    /// JSON with a versioned envelope; see [`SCHEMA`].
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub max_word_len: usize,
    pub assert_malcev: bool,
    pub frame: FrameChoice,
    pub format: OutputFormat,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            max_word_len: DEFAULT_WORD_LENGTH,
            assert_malcev: false,
            frame: FrameChoice::Auto,
            format: OutputFormat::Text,
        }
    }
}

/// Process exit status for a command result: 0 when the input was analysed,
/// 2 for malformed input, 3 for input that is well-formed but outside what
/// the command accepts.
pub fn exit_code(result: &Result<String>) -> i32 {
    match result {
        Ok(_) => 0,
        Err(Error::Parse { .. } | Error::Input(_) | Error::Constructor(_)) => 2,
        Err(_) => 3,
    }
}

fn render(command: &str, sections: &[(&str, &dyn Section)], format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => {
            let mut out = String::new();
            for (_, s) in sections {
                s.render_text(&mut out);
            }
            out
        }
        OutputFormat::Structured => {
            let body: serde_json::Map<String, Value> =
                sections.iter().map(|(k, s)| (k.to_string(), s.render_json())).collect();
            let mut text = serde_json::to_string_pretty(&envelope(command, Value::Object(body))).expect("JSON values serialize");
            text.push('\n');
            text
        }
    }
}

fn load(text: &str) -> Result<GroupPresentation> {
    GroupFile::parse(text)?.to_presentation()
}

/// Generator checks, pair relations, holonomy and `U_Γ`, `U₀`.
pub fn cmd_validate(text: &str, opts: &Options) -> Result<String> {
    let p = load(text)?;
    let space = SpaceSection::build(&p);
    let validation = ValidationSection::build(&p)?;
    let structure = StructureSection::build(&p)?;
    Ok(render(
        "validate",
        &[("space", &space), ("validation", &validation), ("structure", &structure)],
        opts.format,
    ))
}

pub fn analyze(text: &str, opts: &Options) -> Result<AnalysisReport> {
    AnalysisReport::build(&load(text)?, opts)
}

pub fn cmd_analyze(text: &str, opts: &Options) -> Result<String> {
    let report = analyze(text, opts)?;
    Ok(match opts.format {
        OutputFormat::Text => report.text(),
        OutputFormat::Structured => render("analyze", &[("analysis", &report)], opts.format),
    })
}

/// Commutator criteria in the chosen frame (when the presentation validates)
/// and the word scan.
pub fn cmd_fixed_points(text: &str, opts: &Options) -> Result<String> {
    let p = load(text)?;
    let frame = if p.admissibility()?.all_pass() { Some(choose_frame(&p, opts.frame)?) } else { None };
    let fixed = FixedPointSection::build(&p, frame.as_ref(), opts.max_word_len)?;
    let space = SpaceSection::build(&p);
    let both = (frame.map(|frame| FrameSection { choice: opts.frame, frame }), fixed);
    Ok(render("fixed-points", &[("space", &space), ("fixed_points", &both)], opts.format))
}

pub fn cmd_centralizer(text: &str, opts: &Options) -> Result<String> {
    let p = load(text)?;
    let space = SpaceSection::build(&p);
    let c = CentralizerSection::build(&p, opts.assert_malcev);
    Ok(render("centralizer", &[("space", &space), ("centralizer", &c)], opts.format))
}

pub fn cmd_classify(text: &str, opts: &Options) -> Result<String> {
    let p = load(text)?;
    let space = SpaceSection::build(&p);
    let c = ClassificationSection::build(&p)?;
    Ok(render("classify", &[("space", &space), ("classification", &c)], opts.format))
}

/// Builds a presentation from a constructor parameter file and writes it as a
/// group file.
pub fn cmd_construct(text: &str) -> Result<String> {
    let p = ConstructorFile::parse(text)?.build()?;
    Ok(GroupFile::from_presentation(&p).serialize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn example_text() -> String {
        GroupFile::from_presentation(&catalog::example_14()).serialize()
    }

    #[test]
    fn analyze_example() {
        let out = cmd_analyze(&example_text(), &Options::default()).unwrap();
        for needle in [
            "holonomy: non-abelian",
            "dim U₀ = 5",
            "verdict: transitive",
            "bound attained: s = 7, n = 14",
            "freeness scan (L = 4): no fixed point found",
            "all checks pass: yes",
        ] {
            assert!(out.contains(needle), "missing `{needle}`");
        }
    }

    #[test]
    fn structured_output_is_versioned_and_stable() {
        let opts = Options { format: OutputFormat::Structured, ..Options::default() };
        let a = cmd_analyze(&example_text(), &opts).unwrap();
        let b = cmd_analyze(&example_text(), &opts).unwrap();
        assert_eq!(a, b);
        let v: Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        let r = &v["report"]["analysis"];
        assert_eq!(r["structure"]["dim_u0"], 5);
        assert_eq!(r["centralizer"]["verdict"], "transitive");
        assert_eq!(r["diagnostic"]["status"], "attained");
    }

    #[test]
    fn empty_generator_list_validates() {
        let out = cmd_validate("signature 2 1\n", &Options::default()).unwrap();
        assert!(out.contains("all checks pass: yes"));
        assert!(out.contains("holonomy: abelian"));
    }

    #[test]
    fn given_frame_must_be_adapted() {
        let opts = Options { frame: FrameChoice::Given, ..Options::default() };
        // the example's coordinates put U₀ in the first five slots
        assert!(cmd_analyze(&example_text(), &opts).is_ok());
        let moved = catalog::change_basis(&catalog::example_14(), &crate::exactlin::Matrix::identity(14).set(0, 13, crate::exactlin::scalar::int(1))).unwrap();
        let r = cmd_analyze(&GroupFile::from_presentation(&moved).serialize(), &opts);
        assert!(matches!(r, Err(Error::Structure(_))));
        assert_eq!(exit_code(&r), 3);
    }

    #[test]
    fn construct_then_classify() {
        let group = cmd_construct("dimension 3\nbracket 1 2 3 1\nlattice base\n").unwrap();
        let out = cmd_classify(&group, &Options::default()).unwrap();
        assert!(out.contains("class: heisenberg-times-translations (rank 3"));
    }

    #[test]
    fn parse_errors_exit_nonzero() {
        let r = cmd_validate("signature 2 1\ngenerator g\n1 0 0\n", &Options::default());
        assert!(matches!(r, Err(Error::Parse { .. })));
        assert_eq!(exit_code(&r), 2);
    }
}
