#![allow(dead_code)]

use std::path::{Path, PathBuf};

pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

pub fn corpus_files() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "ideal"))
        .collect();
    files.sort();
    files
}

pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the CLI in-process; `.ideal` arguments are resolved against the corpus.
pub fn run(args: &[&str]) -> Output {
    let mut argv = vec!["jetlct".to_string()];
    for a in args {
        if a.ends_with(".ideal") && !a.contains('/') {
            argv.push(corpus_dir().join(a).display().to_string());
        } else {
            argv.push(a.to_string());
        }
    }
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = jetlct_cli::run(argv, &mut out, &mut err);
    Output { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

pub fn write_temp(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}
