use crate::fail::{Failure, Outcome};
use std::fs;
use std::io::Write;
use std::path::Path;

/// Writes through a sibling temporary file and a rename, so readers never see a partial file.
pub fn write_atomic(path: &Path, text: &str) -> Outcome<()> {
    let io_err = |e| Failure::Io(path.display().to_string(), e);
    let name = path
        .file_name()
        .ok_or_else(|| Failure::Usage(format!("not a file path: {}", path.display())))?;
    let mut tmp_name = std::ffi::OsString::from(".");
    tmp_name.push(name);
    tmp_name.push(".tmp");
    let tmp = path.with_file_name(tmp_name);
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(io_err)?;
    }
    let mut file = fs::File::create(&tmp).map_err(io_err)?;
    file.write_all(text.as_bytes()).map_err(io_err)?;
    file.sync_all().map_err(io_err)?;
    drop(file);
    fs::rename(&tmp, path).map_err(io_err)
}

/// Prints to stdout, or writes `path` atomically when given.
pub fn emit(path: Option<&Path>, text: &str) -> Outcome<()> {
    match path {
        Some(p) => write_atomic(p, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Failure::Io("stdout".into(), e))
        }
    }
}

pub fn with_newline(mut text: String) -> String {
    if !text.ends_with('\n') {
        text.push('\n');
    }
    text
}
