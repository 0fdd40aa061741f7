//! Bit-exact codec for the 32-bit custom-instruction word and the
//! command/response pair exchanged between the core model and the
//! accelerator.
//!
//! Word layout, bit 31 down to bit 0:
//! `funct7[31:25] rs2[24:20] rs1[19:15] xd[14] xs1[13] xs2[12] rd[11:7] opcode[6:0]`.
//!
//! The `xd`/`xs1`/`xs2` flags say whether core registers take part: a set
//! source flag means the 64-bit value travels with the command, a set
//! `xd` means the core waits for a response. Cleared source/destination
//! fields address the accelerator's own register file instead.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// The opcode the accelerator claims by default. Configurable at every
/// entry point since deployments may place the unit on a different
/// custom slot.
pub const DEFAULT_CUSTOM_OPCODE: u8 = 0b0010111;

/// Accelerator function selector (the funct7 field).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Funct {
    /// Write a value to an accelerator register.
    Wr,
    /// Read a value back from an accelerator register.
    Rd,
    /// Load a value from memory into a register.
    Ld,
    /// Accumulate a value into a register (binary addition).
    Accum,
    /// Add two BCD numbers.
    DecAdd,
    /// Clear the whole register file.
    ClrAll,
    /// Convert a binary number to BCD.
    DecCnv,
    /// Multiply two BCD numbers.
    DecMul,
    /// Accumulate BCD numbers held in internal registers.
    DecAccum,
}

pub const ALL_FUNCTS: [Funct; 9] = [
    Funct::Wr,
    Funct::Rd,
    Funct::Ld,
    Funct::Accum,
    Funct::DecAdd,
    Funct::ClrAll,
    Funct::DecCnv,
    Funct::DecMul,
    Funct::DecAccum,
];

impl Funct {
    pub fn code(self) -> u8 {
        match self {
            Funct::Wr => 0b0000000,
            Funct::Rd => 0b0000001,
            Funct::Ld => 0b0000010,
            Funct::Accum => 0b0000011,
            Funct::DecAdd => 0b0000100,
            Funct::ClrAll => 0b0000101,
            Funct::DecCnv => 0b0000110,
            Funct::DecMul => 0b0000111,
            Funct::DecAccum => 0b0001000,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Funct::Wr => "WR",
            Funct::Rd => "RD",
            Funct::Ld => "LD",
            Funct::Accum => "ACCUM",
            Funct::DecAdd => "DEC_ADD",
            Funct::ClrAll => "CLR_ALL",
            Funct::DecCnv => "DEC_CNV",
            Funct::DecMul => "DEC_MUL",
            Funct::DecAccum => "DEC_ACCUM",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Funct::Wr => "Write a value to a register",
            Funct::Rd => "Read a value from a register",
            Funct::Ld => "Load a value from a memory",
            Funct::Accum => "Accumulate a value into a register",
            Funct::DecAdd => "Add two BCD numbers",
            Funct::ClrAll => "Clear all registers",
            Funct::DecCnv => "Convert binary number to corresponding BCD",
            Funct::DecMul => "Multiply two BCD numbers",
            Funct::DecAccum => "Accumulate BCD numbers stored in internal registers",
        }
    }
}

impl std::fmt::Display for Funct {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Funct {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ALL_FUNCTS
            .iter()
            .copied()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Input(format!("unknown function name {s:?}")))
    }
}

/// Maps a raw funct7 code onto its named function.
pub fn funct_name(code: u8) -> Result<Funct> {
    ALL_FUNCTS
        .iter()
        .copied()
        .find(|f| f.code() == code)
        .ok_or(Error::UnknownFunction(code))
}

/// A decoded 32-bit custom instruction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RoccInstruction {
    pub funct7: u8,
    pub rs2: u8,
    pub rs1: u8,
    pub xd: bool,
    pub xs1: bool,
    pub xs2: bool,
    pub rd: u8,
    pub opcode: u8,
}

impl RoccInstruction {
    /// Packs the fields into the instruction word.
    pub fn encode(&self) -> Result<u32> {
        check_width("funct7", self.funct7 as u32, 7)?;
        check_width("rs2", self.rs2 as u32, 5)?;
        check_width("rs1", self.rs1 as u32, 5)?;
        check_width("rd", self.rd as u32, 5)?;
        check_width("opcode", self.opcode as u32, 7)?;
        Ok((self.funct7 as u32) << 25
            | (self.rs2 as u32) << 20
            | (self.rs1 as u32) << 15
            | (self.xd as u32) << 14
            | (self.xs1 as u32) << 13
            | (self.xs2 as u32) << 12
            | (self.rd as u32) << 7
            | self.opcode as u32)
    }

    /// Unpacks an instruction word, rejecting instructions that belong
    /// to another opcode. Unknown funct7 codes still decode; they are
    /// resolved (or reported) later by [`funct_name`].
    pub fn decode(word: u32, expected_opcode: u8) -> Result<RoccInstruction> {
        let opcode = (word & 0x7f) as u8;
        if opcode != expected_opcode {
            return Err(Error::ForeignInstruction { found: opcode, expected: expected_opcode });
        }
        Ok(RoccInstruction {
            funct7: (word >> 25) as u8,
            rs2: ((word >> 20) & 0x1f) as u8,
            rs1: ((word >> 15) & 0x1f) as u8,
            xd: (word >> 14) & 1 == 1,
            xs1: (word >> 13) & 1 == 1,
            xs2: (word >> 12) & 1 == 1,
            rd: ((word >> 7) & 0x1f) as u8,
            opcode,
        })
    }

    pub fn funct(&self) -> Result<Funct> {
        funct_name(self.funct7)
    }
}

fn check_width(field: &'static str, value: u32, bits: u32) -> Result<()> {
    if value >> bits != 0 {
        return Err(Error::FieldOverflow { field, value });
    }
    Ok(())
}

/// A command as seen by the accelerator: the decoded function plus the
/// operand words. The 64-bit values are meaningful only when the
/// matching transfer flag is set; otherwise the 5-bit fields address the
/// accelerator register file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Command {
    pub funct: Funct,
    pub rs1_value: u64,
    pub rs2_value: u64,
    pub rs1_addr: u8,
    pub rs2_addr: u8,
    pub rd: u8,
    pub xd: bool,
    pub xs1: bool,
    pub xs2: bool,
}

impl Command {
    pub fn new(funct: Funct) -> Command {
        Command {
            funct,
            rs1_value: 0,
            rs2_value: 0,
            rs1_addr: 0,
            rs2_addr: 0,
            rd: 0,
            xd: false,
            xs1: false,
            xs2: false,
        }
    }

    pub fn rd(mut self, rd: u8) -> Command {
        self.rd = rd;
        self
    }

    /// Source 1 as a transferred value.
    pub fn value1(mut self, value: u64) -> Command {
        self.rs1_value = value;
        self.xs1 = true;
        self
    }

    /// Source 2 as a transferred value.
    pub fn value2(mut self, value: u64) -> Command {
        self.rs2_value = value;
        self.xs2 = true;
        self
    }

    /// Source 1 as a register-file address.
    pub fn reg1(mut self, addr: u8) -> Command {
        self.rs1_addr = addr;
        self.xs1 = false;
        self
    }

    /// Source 2 as a register-file address.
    pub fn reg2(mut self, addr: u8) -> Command {
        self.rs2_addr = addr;
        self.xs2 = false;
        self
    }

    pub fn respond(mut self) -> Command {
        self.xd = true;
        self
    }
}

/// The accelerator's answer to a command with `xd` set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Response {
    pub rd: u8,
    pub data: u64,
}
