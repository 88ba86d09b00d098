//! Line-at-a-time session over any reader and writer.

use std::io::{self, BufRead, Write};

use coda::{render_string, Context};

use crate::commands::{error_messages, run_source};

const HELP: &str = "\
lines are evaluated and their final data printed
step : EXPR   print every step of EXPR
:defs         list user definitions
:budget N     set the step budget
:help         this text
:quit         leave
";

pub struct Repl {
    pub context: Context,
    pub budget: usize,
}

fn trim_line(mut line: &[u8]) -> &[u8] {
    while let [rest @ .., b'\n' | b'\r'] = line {
        line = rest;
    }
    line
}

impl Repl {
    pub fn new(context: Context, budget: usize) -> Repl {
        Repl { context, budget }
    }

    /// Handles one line. Returns false once the session should end.
    pub fn line(&mut self, line: &[u8], out: &mut impl Write, err: &mut impl Write) -> io::Result<bool> {
        let line = trim_line(line);
        match line {
            b":quit" | b":q" => return Ok(false),
            b":help" => out.write_all(HELP.as_bytes())?,
            b":defs" => out.write_all(self.context.serialize().as_bytes())?,
            _ if line.starts_with(b":budget") => {
                match std::str::from_utf8(&line[7..]).ok().and_then(|s| s.trim().parse().ok()) {
                    Some(n) => self.budget = n,
                    None => writeln!(err, "usage: :budget N")?,
                }
            }
            _ => {
                let (source, steps) = match line.strip_prefix(b"step") {
                    Some(rest) if rest.trim_ascii_start().starts_with(b":") => {
                        (rest.trim_ascii_start()[1..].trim_ascii_start(), true)
                    }
                    _ => (line, false),
                };
                let trace = run_source(&self.context, source, self.budget);
                if steps {
                    out.write_all(trace.to_text().as_bytes())?;
                } else {
                    writeln!(out, "{}", render_string(trace.last()))?;
                }
                for msg in error_messages(trace.last()) {
                    writeln!(err, "error: {msg}")?;
                }
                self.context = trace.context;
            }
        }
        Ok(true)
    }

    pub fn run(&mut self, input: impl BufRead, mut out: impl Write, mut err: impl Write) -> io::Result<()> {
        for line in input.split(b'\n') {
            if !self.line(&line?, &mut out, &mut err)? {
                break;
            }
            out.flush()?;
        }
        Ok(())
    }
}
