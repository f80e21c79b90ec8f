use super::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    One,
    Fn,
    Case,
    Of,
    Inl,
    Inr,
    Fst,
    Snd,
    Fold,
    Unfold,
    Mu,
    Let,
    LParen,
    RParen,
    LAngle,
    RAngle,
    LBrace,
    RBrace,
    Comma,
    Colon,
    FatArrow,
    Arrow,
    Plus,
    Star,
    Dot,
    Bar,
    Equals,
    SemiSemi,
    Hole,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Eof => "end of input".to_string(),
            other => format!("`{}`", other.text()),
        }
    }

    fn text(&self) -> &'static str {
        match self {
            Tok::One => "1",
            Tok::Fn => "fn",
            Tok::Case => "case",
            Tok::Of => "of",
            Tok::Inl => "inl",
            Tok::Inr => "inr",
            Tok::Fst => "fst",
            Tok::Snd => "snd",
            Tok::Fold => "fold",
            Tok::Unfold => "unfold",
            Tok::Mu => "mu",
            Tok::Let => "let",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LAngle => "<",
            Tok::RAngle => ">",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::Comma => ",",
            Tok::Colon => ":",
            Tok::FatArrow => "=>",
            Tok::Arrow => "->",
            Tok::Plus => "+",
            Tok::Star => "*",
            Tok::Dot => ".",
            Tok::Bar => "|",
            Tok::Equals => "=",
            Tok::SemiSemi => ";;",
            Tok::Hole => "[-]",
            Tok::Ident(_) | Tok::Eof => "",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

pub fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

pub fn is_ident_continue(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

pub fn keyword(s: &str) -> Option<Tok> {
    Some(match s {
        "fn" => Tok::Fn,
        "case" => Tok::Case,
        "of" => Tok::Of,
        "inl" => Tok::Inl,
        "inr" => Tok::Inr,
        "fst" => Tok::Fst,
        "snd" => Tok::Snd,
        "fold" => Tok::Fold,
        "unfold" => Tok::Unfold,
        "mu" => Tok::Mu,
        "let" => Tok::Let,
        _ => return None,
    })
}

pub fn tokenize(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let peek = |i: usize| chars.get(i).copied();
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let mut push = |tok: Tok, width: usize, i: &mut usize, col: &mut usize| {
            out.push(Spanned {
                tok,
                line: l0,
                column: c0,
            });
            *i += width;
            *col += width;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
            }
            '-' if peek(i + 1) == Some('-') => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '-' if peek(i + 1) == Some('>') => push(Tok::Arrow, 2, &mut i, &mut col),
            '=' if peek(i + 1) == Some('>') => push(Tok::FatArrow, 2, &mut i, &mut col),
            ';' if peek(i + 1) == Some(';') => push(Tok::SemiSemi, 2, &mut i, &mut col),
            '[' if peek(i + 1) == Some('-') && peek(i + 2) == Some(']') => {
                push(Tok::Hole, 3, &mut i, &mut col)
            }
            '=' => push(Tok::Equals, 1, &mut i, &mut col),
            '(' => push(Tok::LParen, 1, &mut i, &mut col),
            ')' => push(Tok::RParen, 1, &mut i, &mut col),
            '<' => push(Tok::LAngle, 1, &mut i, &mut col),
            '>' => push(Tok::RAngle, 1, &mut i, &mut col),
            '{' => push(Tok::LBrace, 1, &mut i, &mut col),
            '}' => push(Tok::RBrace, 1, &mut i, &mut col),
            ',' => push(Tok::Comma, 1, &mut i, &mut col),
            ':' => push(Tok::Colon, 1, &mut i, &mut col),
            '+' => push(Tok::Plus, 1, &mut i, &mut col),
            '*' => push(Tok::Star, 1, &mut i, &mut col),
            '.' => push(Tok::Dot, 1, &mut i, &mut col),
            '|' => push(Tok::Bar, 1, &mut i, &mut col),
            '1' if !peek(i + 1).is_some_and(|c| c.is_ascii_digit()) => {
                push(Tok::One, 1, &mut i, &mut col)
            }
            c if is_ident_start(c) => {
                let start = i;
                let mut j = i;
                while j < chars.len() && is_ident_continue(chars[j]) {
                    j += 1;
                }
                let word: String = chars[start..j].iter().collect();
                let tok = keyword(&word).unwrap_or(Tok::Ident(word));
                push(tok, j - start, &mut i, &mut col);
            }
            other => {
                return Err(ParseError {
                    line,
                    column: col,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}
