//! Concrete syntax: parsing and printing of `.fpc` programs.
//!
//! ```text
//! type ::= type -> type | type + type | type * type | 1 | a | mu a. type | (type)
//! term ::= fn x : type => term
//!        | case term of { inl x => term | inr x => term }
//!        | term term | inl term | inr term | fst term | snd term
//!        | fold term | unfold term
//!        | x | () | <term, term> | (term) | (term : type)
//! file ::= (let name = term-or-type ;;)* term?
//! ```
//!
//! `*` binds tighter than `+`, which binds tighter than `->` (right
//! associative). Application is left associative and binds tightest; the
//! bodies of `fn` and `mu` extend as far right as possible. `--` starts a
//! comment. The program of a file is its trailing term, or else the
//! definition named `main`.

mod lexer;
mod parser;
mod print;

use std::collections::HashMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::rc::Rc;

use thiserror::Error;

use crate::syntax::{subst, Name, Term, Type};
pub(crate) use parser::HOLE_MARKER;
pub use print::{print_term, print_type};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn parser_for(text: &str, allow_hole: bool) -> Result<parser::Parser, ParseError> {
    Ok(parser::Parser::new(lexer::tokenize(text)?, allow_hole))
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut p = parser_for(text, false)?;
    let t = p.term()?;
    if !p.at_eof() {
        return Err(p.error(format!("expected end of input, found {}", p.peek().describe())));
    }
    Ok(t)
}

pub fn parse_type(text: &str) -> Result<Type, ParseError> {
    let mut p = parser_for(text, false)?;
    let t = p.ty()?;
    if !p.at_eof() {
        return Err(p.error(format!("expected end of input, found {}", p.peek().describe())));
    }
    Ok(t)
}

/// Right-hand side of a top-level `let`.
#[derive(Clone, Debug, PartialEq)]
pub enum DefBody {
    Term(Term),
    Type(Type),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Definition {
    pub name: Name,
    /// Body with every earlier definition already expanded.
    pub body: DefBody,
}

/// A parsed `.fpc` file with its abbreviations expanded into `main`.
#[derive(Clone, Debug)]
pub struct SourceFile {
    pub path: Option<PathBuf>,
    pub text: String,
    pub definitions: Vec<Definition>,
    pub main: Term,
}

#[derive(Debug, Error)]
pub enum SourceError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{}{err}", .path.as_deref().map(|p| format!("{p}:")).unwrap_or_default())]
    Parse { path: Option<String>, err: ParseError },
}

impl SourceFile {
    pub fn parse(text: &str) -> Result<SourceFile, ParseError> {
        let (definitions, main) = parse_file(text, false)?;
        Ok(SourceFile {
            path: None,
            text: text.to_string(),
            definitions,
            main,
        })
    }

    pub fn load(path: &Path) -> Result<SourceFile, SourceError> {
        let text = std::fs::read_to_string(path).map_err(|source| SourceError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let mut file = SourceFile::parse(&text).map_err(|err| SourceError::Parse {
            path: Some(path.display().to_string()),
            err,
        })?;
        file.path = Some(path.to_path_buf());
        Ok(file)
    }

    pub fn definition(&self, name: &str) -> Option<&DefBody> {
        self.definitions
            .iter()
            .find(|d| &*d.name == name)
            .map(|d| &d.body)
    }
}

/// Parses a file whose program may contain exactly one hole `[-]`. The hole is
/// returned as the reserved marker variable; see `meta::Context::parse`.
pub(crate) fn parse_file_with_hole(text: &str) -> Result<Term, ParseError> {
    parse_file(text, true).map(|(_, main)| main)
}

fn parse_file(text: &str, allow_hole: bool) -> Result<(Vec<Definition>, Term), ParseError> {
    let mut p = parser_for(text, allow_hole)?;
    let mut defs: Vec<Definition> = Vec::new();
    let mut expander = Expander::default();
    let mut main = None;
    while !p.at_eof() {
        if *p.peek() == lexer::Tok::Let {
            p.expect(lexer::Tok::Let)?;
            let def_name = p.ident()?;
            if defs.iter().any(|d| *d.name == *def_name) {
                return Err(p.error(format!("`{def_name}` is defined twice")));
            }
            p.expect(lexer::Tok::Equals)?;
            let start = p.position();
            let body = match p.term() {
                Ok(t) if *p.peek() == lexer::Tok::SemiSemi => DefBody::Term(t),
                term_result => {
                    let term_err = term_result.err().unwrap_or_else(|| {
                        p.error(format!("expected `;;`, found {}", p.peek().describe()))
                    });
                    p.reset(start);
                    match p.ty() {
                        Ok(t) if *p.peek() == lexer::Tok::SemiSemi => DefBody::Type(t),
                        _ => return Err(term_err),
                    }
                }
            };
            p.expect(lexer::Tok::SemiSemi)?;
            let body = expander
                .expand_def(&body)
                .map_err(|m| p.error(format!("in definition `{def_name}`: {m}")))?;
            let def_name: Name = Rc::from(def_name.as_str());
            expander.add(&def_name, &body);
            defs.push(Definition {
                name: def_name,
                body,
            });
        } else {
            let t = p.term()?;
            if *p.peek() == lexer::Tok::SemiSemi {
                p.expect(lexer::Tok::SemiSemi)?;
            }
            if !p.at_eof() {
                return Err(p.error(format!(
                    "expected end of input after the program, found {}",
                    p.peek().describe()
                )));
            }
            main = Some(expander.expand_term(&t));
        }
    }
    let main = match main {
        Some(m) => m,
        None => match defs.iter().find(|d| &*d.name == "main") {
            Some(Definition {
                body: DefBody::Term(t),
                ..
            }) => t.clone(),
            Some(_) => return Err(p.error("`main` must be a term")),
            None => return Err(p.error("no program: add a trailing term or `let main = ...;;`")),
        },
    };
    Ok((defs, main))
}

#[derive(Default)]
struct Expander {
    terms: Vec<(Name, Rc<Term>)>,
    types: HashMap<Name, Type>,
}

impl Expander {
    fn add(&mut self, n: &Name, body: &DefBody) {
        match body {
            DefBody::Term(t) => self.terms.push((n.clone(), Rc::new(t.clone()))),
            DefBody::Type(t) => {
                self.types.insert(n.clone(), t.clone());
            }
        }
    }

    fn expand_def(&self, body: &DefBody) -> Result<DefBody, String> {
        match body {
            DefBody::Term(t) => {
                let t = self.expand_term(t);
                let fv: Vec<String> = t
                    .free_vars()
                    .iter()
                    .filter(|v| &***v != HOLE_MARKER)
                    .map(|v| v.to_string())
                    .collect();
                if !fv.is_empty() {
                    return Err(format!(
                        "unbound name(s) {}; definitions may only refer to earlier ones",
                        fv.join(", ")
                    ));
                }
                Ok(DefBody::Term(t))
            }
            DefBody::Type(t) => {
                let t = self.expand_type(t);
                let fv: Vec<String> = t.free_vars().iter().map(|v| v.to_string()).collect();
                if !fv.is_empty() {
                    return Err(format!("unbound type variable(s) {}", fv.join(", ")));
                }
                Ok(DefBody::Type(t))
            }
        }
    }

    fn expand_type(&self, t: &Type) -> Type {
        let free = t.free_vars();
        let mut out = t.clone();
        for v in free {
            if let Some(def) = self.types.get(&v) {
                out = out.subst(def, &v);
            }
        }
        out
    }

    fn expand_term(&self, t: &Term) -> Term {
        let mut out = Rc::new(self.expand_types_in(t));
        let free = out.free_vars();
        for (n, body) in self.terms.iter().rev() {
            if free.contains(n) {
                out = subst(&out, body, n);
            }
        }
        Rc::try_unwrap(out).unwrap_or_else(|rc| (*rc).clone())
    }

    fn expand_types_in(&self, t: &Term) -> Term {
        if self.types.is_empty() {
            return t.clone();
        }
        let go = |x: &Rc<Term>| Rc::new(self.expand_types_in(x));
        match t {
            Term::Var(_) | Term::Unit => t.clone(),
            Term::Pair(a, b) => Term::Pair(go(a), go(b)),
            Term::App(a, b) => Term::App(go(a), go(b)),
            Term::Fst(a) => Term::Fst(go(a)),
            Term::Snd(a) => Term::Snd(go(a)),
            Term::Inl(a) => Term::Inl(go(a)),
            Term::Inr(a) => Term::Inr(go(a)),
            Term::Fold(a) => Term::Fold(go(a)),
            Term::Unfold(a) => Term::Unfold(go(a)),
            Term::Ann(a, ty) => Term::Ann(go(a), self.expand_type(ty)),
            Term::Lam(x, ty, b) => Term::Lam(x.clone(), self.expand_type(ty), go(b)),
            Term::Case(l, x1, m, x2, n) => Term::Case(go(l), x1.clone(), go(m), x2.clone(), go(n)),
        }
    }
}

impl fmt::Display for DefBody {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DefBody::Term(t) => write!(f, "{t}"),
            DefBody::Type(t) => write!(f, "{t}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_basic_terms() {
        assert_eq!(parse_term("fold (inl ())").unwrap(), Term::fold(Term::inl(Term::Unit)));
        assert_eq!(
            parse_term("fn x : 1 => x").unwrap(),
            Term::lam("x", Type::Unit, Term::var("x"))
        );
        let t = parse_term("case unfold n of { inl x1 => x1 | inr x2 => n }").unwrap();
        assert_eq!(
            t,
            Term::case(
                Term::unfold(Term::var("n")),
                "x1",
                Term::var("x1"),
                "x2",
                Term::var("n")
            )
        );
    }

    #[test]
    fn prefix_keywords_take_one_argument() {
        let t = parse_term("y (unfold x x y)").unwrap();
        let inner = Term::app(
            Term::app(Term::unfold(Term::var("x")), Term::var("x")),
            Term::var("y"),
        );
        assert_eq!(t, Term::app(Term::var("y"), inner));
    }

    #[test]
    fn parses_types_with_precedence() {
        assert_eq!(parse_type("mu a. 1 + a").unwrap(), Type::nat());
        assert_eq!(
            parse_type("1 -> 1 -> 1").unwrap(),
            Type::arrow(Type::Unit, Type::arrow(Type::Unit, Type::Unit))
        );
        assert_eq!(
            parse_type("1 + 1 * 1").unwrap(),
            Type::sum(Type::Unit, Type::prod(Type::Unit, Type::Unit))
        );
    }

    #[test]
    fn prints_minimal_parentheses() {
        assert_eq!(print_term(&Term::fold(Term::inl(Term::Unit))), "fold (inl ())");
        assert_eq!(print_type(&Type::nat()), "mu a. 1 + a");
        let fxy = Term::app(Term::app(Term::var("f"), Term::var("x")), Term::var("y"));
        assert_eq!(print_term(&fxy), "f x y");
        let t = Type::arrow(Type::nat(), Type::Unit);
        assert_eq!(print_type(&t), "(mu a. 1 + a) -> 1");
        assert_eq!(parse_type(&print_type(&t)).unwrap(), t);
    }

    #[test]
    fn parse_errors_carry_locations() {
        let e = parse_term("fn x 1 => x").unwrap_err();
        assert_eq!((e.line, e.column), (1, 6));
        let e = parse_term("(\n  fold ()").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(parse_term("x $").is_err());
        assert!(parse_term("[-]").is_err());
    }

    #[test]
    fn comments_are_skipped() {
        let t = parse_term("-- a comment\n() -- trailing").unwrap();
        assert_eq!(t, Term::Unit);
    }

    #[test]
    fn file_definitions_expand() {
        let src = "
            let Nat = mu a. 1 + a;;
            let zero = (fold (inl ()) : Nat);;
            let id = fn n : Nat => n;;
            id zero
        ";
        let f = SourceFile::parse(src).unwrap();
        let zero = Term::ann(Term::fold(Term::inl(Term::Unit)), Type::nat());
        let expected = Term::app(Term::lam("n", Type::nat(), Term::var("n")), zero);
        assert!(f.main.alpha_eq(&expected), "{}", f.main);
        assert!(matches!(f.definition("Nat"), Some(DefBody::Type(_))));
    }

    #[test]
    fn main_definition_is_the_program() {
        let f = SourceFile::parse("let u = ();; let main = <u, u>;;").unwrap();
        assert_eq!(f.main, Term::pair(Term::Unit, Term::Unit));
    }

    #[test]
    fn definitions_must_not_be_recursive() {
        let err = SourceFile::parse("let f = fn x : 1 => f x;; f ()").unwrap_err();
        assert!(err.message.contains("earlier"), "{err}");
    }

    #[test]
    fn binders_shadow_definitions() {
        let f = SourceFile::parse("let x = ();; fn x : 1 + 1 => x").unwrap();
        assert_eq!(f.main, Term::lam("x", Type::bool(), Term::var("x")));
    }
}
