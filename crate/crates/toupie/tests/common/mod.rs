//! Fixture loading and in-process command runs.
#![allow(dead_code)]

use std::path::PathBuf;

use toupie::parse;
use toupie_core::toupie::ToupiePresentation;

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn fixture_path(name: &str) -> String {
    fixtures_dir()
        .join(format!("{name}.toupie"))
        .to_string_lossy()
        .into_owned()
}

/// Fixture names without extension, sorted.
pub fn fixture_names() -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(fixtures_dir())
        .unwrap()
        .filter_map(|e| {
            let p = e.unwrap().path();
            (p.extension()? == "toupie")
                .then(|| p.file_stem().unwrap().to_string_lossy().into_owned())
        })
        .collect();
    names.sort();
    names
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap()
}

pub fn fixture(name: &str) -> ToupiePresentation {
    parse(&fixture_text(name)).unwrap()
}

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run_with_stdin(args: &[&str], stdin: &str) -> Outcome {
    let mut argv = vec!["toupie"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = toupie::cli::run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

pub fn run(args: &[&str]) -> Outcome {
    run_with_stdin(args, "")
}
