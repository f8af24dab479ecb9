//! Compiles `tests/c/smoke.c` against the generated header and the static
//! library, then checks its output. Skipped when no C compiler is on PATH.

use std::path::{Path, PathBuf};
use std::process::Command;

fn staticlib() -> Option<PathBuf> {
    // target/<profile>/deps/c_abi-<hash> -> target/<profile>
    let exe = std::env::current_exe().ok()?;
    let profile = exe.parent()?.parent()?;
    let lib = profile.join("libframeposet_ffi.a");
    lib.exists().then_some(lib)
}

#[test]
fn c_program_links_and_runs() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("no C compiler; skipping");
        return;
    }
    let Some(lib) = staticlib() else {
        eprintln!("static library not found; skipping");
        return;
    };
    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    let out = std::env::temp_dir().join(format!("frameposet-smoke-{}", std::process::id()));
    let status = Command::new(&cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(root.join("include"))
        .arg(root.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .expect("compiler runs");
    assert!(status.success(), "C compile failed");

    let run = Command::new(&out).output().expect("smoke binary runs");
    std::fs::remove_file(&out).ok();
    assert_eq!(run.status.code(), Some(0), "{}", String::from_utf8_lossy(&run.stderr));
    let text = String::from_utf8(run.stdout).unwrap();
    let expected = "bounds 2 2\n\
                    members 6\n\
                    chi 2 2 2 2\n\
                    necessary 1 0\n\
                    {\"ground\":4,\"members\":[[],[1,2],[2,3],[1,4],[3,4],[1,2,3,4]]}\n";
    assert_eq!(text, expected);
}
