#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::rc::Rc;

use fpc::surface::SourceFile;
use fpc::syntax::{Term, Type};
use fpc::types::{elaborate_closed, CoreTerm};

pub struct Program {
    pub name: String,
    pub term: Term,
    pub core: Rc<CoreTerm>,
}

impl Program {
    pub fn ty(&self) -> &Type {
        &self.core.ty
    }

    pub fn is_ground(&self) -> bool {
        *self.ty() == Type::Unit || self.ty().alpha_eq(&Type::bool())
    }

    pub fn is_bool(&self) -> bool {
        self.ty().alpha_eq(&Type::bool())
    }
}

pub fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn fpc_files(dir: &Path) -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "fpc"))
        .collect();
    files.sort();
    files
}

pub fn load(path: &Path) -> Program {
    let src = SourceFile::load(path).unwrap_or_else(|e| panic!("{e}"));
    let core = elaborate_closed(&src.main).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    Program {
        name: path.file_stem().unwrap().to_string_lossy().into_owned(),
        term: src.main,
        core,
    }
}

/// Every program under `corpus/` and `examples/`.
pub fn corpus() -> Vec<Program> {
    let root = manifest_dir();
    let mut files = fpc_files(&root.join("corpus"));
    files.extend(fpc_files(&root.join("examples")));
    files.iter().map(|p| load(p)).collect()
}

pub const PAIR_TYPES: [&str; 5] = ["unit", "bool", "nat", "unit_to_unit", "nat_to_bool"];

pub fn pair(name: &str) -> (Program, Program) {
    let dir = manifest_dir().join("corpus/pairs").join(name);
    (load(&dir.join("left.fpc")), load(&dir.join("right.fpc")))
}

pub fn contexts_dir(name: &str) -> PathBuf {
    manifest_dir().join("corpus/contexts").join(name)
}
