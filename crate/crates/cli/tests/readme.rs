//! Executes every console example in the repository README and diffs its
//! output, so the documentation can never drift from the binary.

use std::path::Path;
use std::process::Command;

struct Example {
    command: String,
    args: Vec<String>,
    expected: String,
}

fn parse_examples(readme: &str) -> Vec<Example> {
    let mut examples = Vec::new();
    let mut in_console = false;
    let mut current: Option<Example> = None;
    for line in readme.lines() {
        if !in_console {
            if line.trim() == "```console" {
                in_console = true;
            }
            continue;
        }
        if line.trim() == "```" {
            examples.extend(current.take());
            in_console = false;
            continue;
        }
        if let Some(rest) = line.strip_prefix("$ ") {
            examples.extend(current.take());
            let rest = rest
                .strip_prefix("kindred")
                .expect("README commands invoke the kindred binary")
                .trim();
            current = Some(Example {
                command: line.to_string(),
                args: rest.split_whitespace().map(str::to_string).collect(),
                expected: String::new(),
            });
        } else {
            let example = current
                .as_mut()
                .expect("console output lines follow a $ command");
            example.expected.push_str(line);
            example.expected.push('\n');
        }
    }
    assert!(!in_console, "unterminated console block");
    examples
}

#[test]
fn every_readme_example_prints_exactly_what_it_claims() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR"))
        .parent()
        .and_then(Path::parent)
        .expect("workspace root")
        .to_path_buf();
    let readme = std::fs::read_to_string(root.join("README.md")).expect("README.md");
    let examples = parse_examples(&readme);
    assert!(
        examples.len() >= 8,
        "README should carry the full example set, found {}",
        examples.len()
    );

    for example in &examples {
        let output = Command::new(env!("CARGO_BIN_EXE_kindred"))
            .args(&example.args)
            .current_dir(&root)
            .env_remove("KINDRED_DIGITS")
            .output()
            .expect("binary runs");
        assert!(
            output.status.success(),
            "`{}` exited with {:?}:\n{}",
            example.command,
            output.status.code(),
            String::from_utf8_lossy(&output.stderr)
        );
        let actual = String::from_utf8(output.stdout).expect("utf-8 output");
        let normalize = |text: &str| -> Vec<String> {
            text.trim_end().lines().map(|l| l.trim_end().to_string()).collect()
        };
        assert_eq!(
            normalize(&actual),
            normalize(&example.expected),
            "`{}` printed something else than the README shows",
            example.command
        );
    }
}
