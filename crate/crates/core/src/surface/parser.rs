use super::lexer::{Spanned, Tok};
use super::ParseError;
use crate::syntax::{name, Term, Type};

/// Marker variable standing for a context hole while parsing.
pub const HOLE_MARKER: &str = "[-]";

pub struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    allow_hole: bool,
}

impl Parser {
    pub fn new(toks: Vec<Spanned>, allow_hole: bool) -> Parser {
        Parser {
            toks,
            pos: 0,
            allow_hole,
        }
    }

    pub fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn reset(&mut self, pos: usize) {
        self.pos = pos;
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub fn error(&self, message: impl Into<String>) -> ParseError {
        let s = &self.toks[self.pos];
        ParseError {
            line: s.line,
            column: s.column,
            message: message.into(),
        }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        self.error(format!("expected {wanted}, found {}", self.peek().describe()))
    }

    pub fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    pub fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.unexpected("an identifier")),
        }
    }

    pub fn at_eof(&self) -> bool {
        *self.peek() == Tok::Eof
    }

    // -- types ---------------------------------------------------------------

    pub fn ty(&mut self) -> Result<Type, ParseError> {
        let lhs = self.sum_ty()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.ty()?;
            return Ok(Type::arrow(lhs, rhs));
        }
        Ok(lhs)
    }

    fn sum_ty(&mut self) -> Result<Type, ParseError> {
        let lhs = self.prod_ty()?;
        if *self.peek() == Tok::Plus {
            self.bump();
            let rhs = self.sum_ty()?;
            return Ok(Type::sum(lhs, rhs));
        }
        Ok(lhs)
    }

    fn prod_ty(&mut self) -> Result<Type, ParseError> {
        let lhs = self.atom_ty()?;
        if *self.peek() == Tok::Star {
            self.bump();
            let rhs = self.prod_ty()?;
            return Ok(Type::prod(lhs, rhs));
        }
        Ok(lhs)
    }

    fn atom_ty(&mut self) -> Result<Type, ParseError> {
        match self.peek().clone() {
            Tok::One => {
                self.bump();
                Ok(Type::Unit)
            }
            Tok::Ident(a) => {
                self.bump();
                Ok(Type::Var(name(&a)))
            }
            Tok::LParen => {
                self.bump();
                let t = self.ty()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::Mu => {
                self.bump();
                let a = self.ident()?;
                self.expect(Tok::Dot)?;
                let body = self.ty()?;
                Ok(Type::mu(&a, body))
            }
            _ => Err(self.unexpected("a type")),
        }
    }

    // -- terms ---------------------------------------------------------------

    pub fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Tok::Fn => {
                self.bump();
                let x = self.ident()?;
                self.expect(Tok::Colon)?;
                let ty = self.ty()?;
                self.expect(Tok::FatArrow)?;
                let body = self.term()?;
                Ok(Term::lam(&x, ty, body))
            }
            Tok::Case => {
                self.bump();
                let scrut = self.term()?;
                self.expect(Tok::Of)?;
                self.expect(Tok::LBrace)?;
                self.expect(Tok::Inl)?;
                let x1 = self.ident()?;
                self.expect(Tok::FatArrow)?;
                let left = self.term()?;
                self.expect(Tok::Bar)?;
                self.expect(Tok::Inr)?;
                let x2 = self.ident()?;
                self.expect(Tok::FatArrow)?;
                let right = self.term()?;
                self.expect(Tok::RBrace)?;
                Ok(Term::case(scrut, &x1, left, &x2, right))
            }
            _ => self.app(),
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Ident(_) | Tok::LParen | Tok::LAngle | Tok::Hole
        )
    }

    fn app(&mut self) -> Result<Term, ParseError> {
        let mut head = self.head()?;
        while self.starts_atom() {
            let arg = self.atom()?;
            head = Term::app(head, arg);
        }
        Ok(head)
    }

    fn head(&mut self) -> Result<Term, ParseError> {
        let wrap: fn(Term) -> Term = match self.peek() {
            Tok::Inl => Term::inl,
            Tok::Inr => Term::inr,
            Tok::Fst => Term::fst,
            Tok::Snd => Term::snd,
            Tok::Fold => Term::fold,
            Tok::Unfold => Term::unfold,
            _ => return self.atom(),
        };
        self.bump();
        Ok(wrap(self.head()?))
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Tok::Ident(x) => {
                self.bump();
                Ok(Term::var(&x))
            }
            Tok::Hole if self.allow_hole => {
                self.bump();
                Ok(Term::var(HOLE_MARKER))
            }
            Tok::Hole => Err(self.error("a hole `[-]` is only allowed in contexts")),
            Tok::LParen => {
                self.bump();
                if *self.peek() == Tok::RParen {
                    self.bump();
                    return Ok(Term::Unit);
                }
                let t = self.term()?;
                if *self.peek() == Tok::Colon {
                    self.bump();
                    let ty = self.ty()?;
                    self.expect(Tok::RParen)?;
                    return Ok(Term::ann(t, ty));
                }
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::LAngle => {
                self.bump();
                let a = self.term()?;
                self.expect(Tok::Comma)?;
                let b = self.term()?;
                self.expect(Tok::RAngle)?;
                Ok(Term::pair(a, b))
            }
            _ => Err(self.unexpected("a term")),
        }
    }
}
