//! Compiles a small C program against the generated header and the static
//! library. Skipped when no C compiler or static library is available.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "ctree.h"

int main(int argc, char **argv) {
    FILE *f = fopen(argv[1], "rb");
    if (!f) return 10;
    static char buf[1 << 16];
    size_t n = fread(buf, 1, sizeof buf - 1, f);
    fclose(f);
    buf[n] = 0;

    CtreeDocument *doc = NULL;
    if (ctree_document_parse(buf, &doc) != CTREE_STATUS_OK) return 11;
    CtreeBelief *b = NULL;
    if (ctree_belief_new(doc, &b) != CTREE_STATUS_OK) return 12;
    ctree_document_free(doc);
    if (ctree_belief_observe(b, "Pick", "left") != CTREE_STATUS_OK) return 13;
    char *p = NULL;
    if (ctree_belief_probability(b, "Swap", "yes", &p) != CTREE_STATUS_OK) return 14;
    printf("%s\n", p);
    ctree_string_free(p);
    if (ctree_belief_observe(b, "Pick", "right") != CTREE_STATUS_UPDATE_ERROR) return 15;
    printf("%s\n", ctree_last_error_message());
    ctree_belief_free(b);
    return 0;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap();
    let lib = profile_dir.join("libctree_ffi.a");
    if !lib.exists() {
        eprintln!("skipped: {} not built", lib.display());
        return;
    }
    let tmp = tempfile::tempdir().unwrap();
    let src = tmp.path().join("smoke.c");
    let bin = tmp.path().join("smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let compiled = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .output();
    let compiled = match compiled {
        Ok(o) => o,
        Err(e) => {
            eprintln!("skipped: no C compiler ({e})");
            return;
        }
    };
    assert!(
        compiled.status.success(),
        "{}",
        String::from_utf8_lossy(&compiled.stderr)
    );
    let run = Command::new(&bin)
        .arg(manifest.join("../core/corpus/urn.ctree"))
        .output()
        .unwrap();
    assert_eq!(run.status.code(), Some(0), "{}", String::from_utf8_lossy(&run.stderr));
    let stdout = String::from_utf8(run.stdout).unwrap();
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "1/4");
    assert!(lines[1].contains("probability zero"), "{stdout}");
}
