use frobskew::Error;

/// A whitespace-separated word; whitespace inside parentheses does not split.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub text: String,
    /// 1-based column of the first character.
    pub column: usize,
}

#[derive(Clone, Debug)]
pub struct Line {
    pub number: usize,
    pub tokens: Vec<Token>,
    /// Everything after the keyword, for declarations that take a free list.
    pub rest: Option<Token>,
}

impl Line {
    pub fn keyword(&self) -> &str {
        &self.tokens[0].text
    }

    pub fn error(&self, column: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.number,
            column,
            message: message.into(),
        }
    }

    /// Re-anchors an error from parsing `token`'s text at its place in the script.
    pub fn locate(&self, token: &Token, e: Error) -> Error {
        e.at_line(self.number, token.column - 1)
    }
}

fn tokenize(text: &str) -> std::result::Result<Vec<Token>, (usize, String)> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    let mut start = 0;
    let mut depth = 0i32;
    for (i, ch) in text.chars().enumerate() {
        if ch.is_whitespace() && depth == 0 {
            if !current.is_empty() {
                tokens.push(Token {
                    text: std::mem::take(&mut current),
                    column: start + 1,
                });
            }
            continue;
        }
        if current.is_empty() {
            start = i;
        }
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err((i + 1, "unbalanced ')'".into()));
                }
            }
            _ => {}
        }
        current.push(ch);
    }
    if depth != 0 {
        return Err((start + 1, "unclosed '('".into()));
    }
    if !current.is_empty() {
        tokens.push(Token {
            text: current,
            column: start + 1,
        });
    }
    Ok(tokens)
}

/// Splits a script into non-empty lines; `#` starts a comment.
pub fn lines(script: &str) -> Result<Vec<Line>, Error> {
    let mut out = Vec::new();
    for (i, raw) in script.lines().enumerate() {
        let number = i + 1;
        let text = raw.split('#').next().unwrap_or("");
        let tokens = tokenize(text).map_err(|(column, message)| Error::Parse {
            line: number,
            column,
            message,
        })?;
        if tokens.is_empty() {
            continue;
        }
        let rest = tokens.get(1).map(|t| {
            let from: String = text.chars().skip(t.column - 1).collect();
            Token {
                text: from.trim_end().to_string(),
                column: t.column,
            }
        });
        out.push(Line { number, tokens, rest });
    }
    Ok(out)
}

/// `key=value` arguments plus bare words, in order of appearance.
#[derive(Clone, Debug, Default)]
pub struct Args {
    pub pairs: Vec<(String, Token)>,
    pub words: Vec<Token>,
}

impl Args {
    pub fn of(line: &Line, skip: usize) -> Result<Args, Error> {
        let mut args = Args::default();
        for t in &line.tokens[skip..] {
            match t.text.split_once('=') {
                Some((k, v)) => {
                    if k.is_empty() || v.is_empty() {
                        return Err(line.error(t.column, format!("malformed argument '{}'", t.text)));
                    }
                    if args.pairs.iter().any(|(seen, _)| seen == k) {
                        return Err(line.error(t.column, format!("'{k}' given twice")));
                    }
                    args.pairs.push((
                        k.to_string(),
                        Token {
                            text: v.to_string(),
                            column: t.column + k.chars().count() + 1,
                        },
                    ));
                }
                None => args.words.push(t.clone()),
            }
        }
        Ok(args)
    }

    pub fn get(&self, key: &str) -> Option<&Token> {
        self.pairs.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn require(&self, line: &Line, key: &str) -> Result<&Token, Error> {
        self.get(key)
            .ok_or_else(|| line.error(line.tokens[0].column, format!("missing '{key}=' argument")))
    }

    /// Rejects keys outside `allowed` and more than `max_words` bare words.
    pub fn only(&self, line: &Line, allowed: &[&str], max_words: usize) -> Result<(), Error> {
        if let Some((k, v)) = self.pairs.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
            return Err(line.error(
                v.column - k.chars().count() - 1,
                format!("unknown argument '{k}' for '{}'", line.keyword()),
            ));
        }
        if let Some(w) = self.words.get(max_words) {
            return Err(line.error(w.column, format!("unexpected '{}'", w.text)));
        }
        Ok(())
    }

    pub fn number<T: std::str::FromStr>(&self, line: &Line, key: &str, default: Option<T>) -> Result<T, Error> {
        match (self.get(key), default) {
            (Some(t), _) => t.text.parse().map_err(|_| {
                line.error(
                    t.column,
                    format!("'{key}' expects a non-negative integer, got '{}'", t.text),
                )
            }),
            (None, Some(d)) => Ok(d),
            (None, None) => Err(self.require(line, key).unwrap_err()),
        }
    }

    /// Like [`Args::number`] but rejects zero.
    pub fn positive(&self, line: &Line, key: &str, default: Option<usize>) -> Result<usize, Error> {
        let n: usize = self.number(line, key, default)?;
        if n == 0 {
            let column = self.get(key).map_or(line.tokens[0].column, |t| t.column);
            return Err(line.error(column, format!("'{key}' must be at least 1")));
        }
        Ok(n)
    }
}

/// Removes one pair of enclosing parentheses, tracking the column shift.
pub fn unwrap_parens(t: &Token) -> Token {
    let s = t.text.trim();
    match s.strip_prefix('(').and_then(|x| x.strip_suffix(')')) {
        Some(inner) if balanced(inner) => Token {
            text: inner.to_string(),
            column: t.column + 1,
        },
        _ => t.clone(),
    }
}

fn balanced(s: &str) -> bool {
    let mut depth = 0i32;
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return false;
        }
    }
    depth == 0
}

/// Splits on `sep` at parenthesis depth zero, keeping columns.
pub fn split_top(t: &Token, sep: char) -> Vec<Token> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut start = 0;
    let mut depth = 0i32;
    for (i, ch) in t.text.chars().enumerate() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(Token {
                    text: std::mem::take(&mut current),
                    column: t.column + start,
                });
                start = i + 1;
                continue;
            }
            _ => {}
        }
        current.push(ch);
    }
    out.push(Token {
        text: current,
        column: t.column + start,
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parentheses_keep_spaces() {
        let l = lines("module m finite summands=(s, t);(t) frobenius").unwrap();
        let words: Vec<&str> = l[0].tokens.iter().map(|t| t.text.as_str()).collect();
        assert_eq!(words, ["module", "m", "finite", "summands=(s, t);(t)", "frobenius"]);
        assert_eq!(l[0].tokens[3].column, 17);
    }

    #[test]
    fn comments_and_blank_lines() {
        let l = lines("# header\n\nring p=2 vars=x  # trailing\n").unwrap();
        assert_eq!(l.len(), 1);
        assert_eq!(l[0].number, 3);
        assert_eq!(l[0].rest.as_ref().unwrap().text, "p=2 vars=x");
    }

    #[test]
    fn unbalanced_parentheses_are_located() {
        match lines("ring p=2\nideal a = (x, y").unwrap_err() {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (2, 11)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn arguments() {
        let all = lines("frobclosure a bound=0").unwrap();
        let l = &all[0];
        let args = Args::of(l, 1).unwrap();
        assert_eq!(args.words[0].text, "a");
        match args.positive(l, "bound", Some(3)).unwrap_err() {
            Error::Parse { column, .. } => assert_eq!(column, 21),
            other => panic!("{other:?}"),
        }
        let all = lines("frobclosure a").unwrap();
        let l = &all[0];
        assert_eq!(Args::of(l, 1).unwrap().positive(l, "bound", Some(3)).unwrap(), 3);
    }

    #[test]
    fn top_level_split() {
        let t = Token {
            text: "(s, t);(t)".into(),
            column: 10,
        };
        let parts = split_top(&t, ';');
        assert_eq!(parts.len(), 2);
        assert_eq!((parts[1].text.as_str(), parts[1].column), ("(t)", 17));
        let inner = unwrap_parens(&parts[0]);
        assert_eq!((inner.text.as_str(), inner.column), ("s, t", 11));
    }
}
