use thiserror::Error;

/// Errors produced by the simulator library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid decimal digit {0}")]
    InvalidDigit(u8),

    #[error("{0}")]
    Range(String),

    #[error("invalid BCD operand: nibble {nibble:#x} at digit {position}")]
    InvalidOperand { nibble: u8, position: usize },

    #[error("unknown function code {0:#09b}")]
    UnknownFunction(u8),

    #[error("foreign instruction: opcode {found:#09b}, expected {expected:#09b}")]
    ForeignInstruction { found: u8, expected: u8 },

    #[error("instruction field overflow: {field} = {value}")]
    FieldOverflow { field: &'static str, value: u32 },

    #[error("memory fault: no mapping at {0:#x}")]
    MemoryFault(u64),

    #[error("accelerator busy: command refused while not idle")]
    AcceleratorBusy,

    #[error("format error: {0}")]
    Format(String),

    #[error("unsupported by the co-design pipeline: {0}")]
    Unsupported(String),

    #[error("generation error: {0}")]
    Generation(String),

    #[error("cost table error: {0}")]
    CostTable(String),

    #[error("input error: {0}")]
    Input(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
