//! Functional and cycle model of the decimal accelerator: register file,
//! interface FSM, per-command execution semantics, and deterministic
//! cycle accounting.
//!
//! Every command costs `cmd_latency + exec_cycles[funct]`, plus
//! `resp_latency` when the core waits for a response (`xd` set). The
//! interface FSM walks idle -> decode -> execute -> (respond) -> idle
//! once per command; commands are refused while the unit is not idle.

use crate::bcd::{
    accumulate_partials, bcd_cla_add, bcd_shift_digits, bin_to_bcd, gen_multiples, BcdWord,
    WideBcd,
};
use crate::error::{Error, Result};
use crate::rocc::{Command, Funct, Response, ALL_FUNCTS};
use std::collections::BTreeMap;

/// Named software primitives the pipelines charge cycles for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SwPrimitive {
    DecodeDpd,
    LimbMul,
    CarryPass,
    RoundDigit,
    EncodeDpd,
    BcdShift,
    LoopOverhead,
    DummyCall,
}

pub const ALL_SW_PRIMITIVES: [SwPrimitive; 8] = [
    SwPrimitive::DecodeDpd,
    SwPrimitive::LimbMul,
    SwPrimitive::CarryPass,
    SwPrimitive::RoundDigit,
    SwPrimitive::EncodeDpd,
    SwPrimitive::BcdShift,
    SwPrimitive::LoopOverhead,
    SwPrimitive::DummyCall,
];

impl SwPrimitive {
    pub fn name(self) -> &'static str {
        match self {
            SwPrimitive::DecodeDpd => "decode_dpd",
            SwPrimitive::LimbMul => "limb_mul",
            SwPrimitive::CarryPass => "carry_pass",
            SwPrimitive::RoundDigit => "round_digit",
            SwPrimitive::EncodeDpd => "encode_dpd",
            SwPrimitive::BcdShift => "bcd_shift",
            SwPrimitive::LoopOverhead => "loop_overhead",
            SwPrimitive::DummyCall => "dummy_call",
        }
    }

    fn from_name(name: &str) -> Option<SwPrimitive> {
        ALL_SW_PRIMITIVES.iter().copied().find(|p| p.name() == name)
    }
}

/// Configurable cycle charges: command/response transfer latencies,
/// per-function execution cycles, and per-primitive software costs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostTable {
    pub cmd_latency: u64,
    pub resp_latency: u64,
    exec: BTreeMap<Funct, u64>,
    sw: BTreeMap<SwPrimitive, u64>,
}

impl Default for CostTable {
    fn default() -> Self {
        let mut exec = BTreeMap::new();
        for funct in ALL_FUNCTS {
            let cycles = match funct {
                Funct::DecCnv => 4,
                Funct::Ld => 4, // flat cache-hit latency, kept deterministic
                Funct::DecMul => 20,
                _ => 1,
            };
            exec.insert(funct, cycles);
        }
        let mut sw = BTreeMap::new();
        for prim in ALL_SW_PRIMITIVES {
            let cycles = match prim {
                SwPrimitive::DecodeDpd => 150,
                SwPrimitive::LimbMul => 400,
                SwPrimitive::CarryPass => 133,
                SwPrimitive::RoundDigit => 20,
                SwPrimitive::EncodeDpd => 140,
                SwPrimitive::BcdShift => 10,
                SwPrimitive::LoopOverhead => 36,
                SwPrimitive::DummyCall => 17,
            };
            sw.insert(prim, cycles);
        }
        CostTable { cmd_latency: 2, resp_latency: 2, exec, sw }
    }
}

impl CostTable {
    pub fn exec_cycles(&self, funct: Funct) -> u64 {
        self.exec[&funct]
    }

    pub fn set_exec_cycles(&mut self, funct: Funct, cycles: u64) {
        self.exec.insert(funct, cycles);
    }

    pub fn sw_cycles(&self, prim: SwPrimitive) -> u64 {
        self.sw[&prim]
    }

    pub fn set_sw_cycles(&mut self, prim: SwPrimitive, cycles: u64) {
        self.sw.insert(prim, cycles);
    }

    /// Cycles one command consumes end to end.
    pub fn command_cycles(&self, funct: Funct, xd: bool) -> u64 {
        self.cmd_latency + self.exec_cycles(funct) + if xd { self.resp_latency } else { 0 }
    }

    /// Applies overrides from a flat key/value JSON document. Keys are
    /// `cmd_latency`, `resp_latency`, `exec.<FUNCT>`, `sw.<primitive>`;
    /// anything else is rejected.
    pub fn apply_overrides(&mut self, json: &str) -> Result<()> {
        let doc: serde_json::Map<String, serde_json::Value> = serde_json::from_str(json)
            .map_err(|e| Error::CostTable(format!("not a flat JSON object: {e}")))?;
        for (key, value) in &doc {
            let cycles = value
                .as_u64()
                .ok_or_else(|| Error::CostTable(format!("{key}: {value} is not a nonnegative integer")))?;
            match key.as_str() {
                "cmd_latency" => self.cmd_latency = cycles,
                "resp_latency" => self.resp_latency = cycles,
                other => {
                    if let Some(name) = other.strip_prefix("exec.") {
                        let funct: Funct = name
                            .parse()
                            .map_err(|_| Error::CostTable(format!("unknown key {key:?}")))?;
                        self.exec.insert(funct, cycles);
                    } else if let Some(name) = other.strip_prefix("sw.") {
                        let prim = SwPrimitive::from_name(name)
                            .ok_or_else(|| Error::CostTable(format!("unknown key {key:?}")))?;
                        self.sw.insert(prim, cycles);
                    } else {
                        return Err(Error::CostTable(format!("unknown key {key:?}")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn from_json(json: &str) -> Result<CostTable> {
        let mut table = CostTable::default();
        table.apply_overrides(json)?;
        Ok(table)
    }

    /// The full table as the flat key/value document it loads from.
    pub fn to_json(&self) -> String {
        let mut doc = serde_json::Map::new();
        doc.insert("cmd_latency".into(), self.cmd_latency.into());
        doc.insert("resp_latency".into(), self.resp_latency.into());
        for funct in ALL_FUNCTS {
            doc.insert(format!("exec.{}", funct.name()), self.exec[&funct].into());
        }
        for prim in ALL_SW_PRIMITIVES {
            doc.insert(format!("sw.{}", prim.name()), self.sw[&prim].into());
        }
        serde_json::to_string_pretty(&doc).unwrap()
    }
}

/// Interface FSM phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Phase {
    #[default]
    Idle,
    Decode,
    Execute {
        remaining: u64,
    },
    Respond,
}

/// One executed command with its cycle charge and optional response.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub command: Command,
    pub cycles: u64,
    pub response: Option<Response>,
}

/// The sequence of commands one driver run issued.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CommandTrace {
    pub entries: Vec<TraceEntry>,
}

impl CommandTrace {
    pub fn total_cycles(&self) -> u64 {
        self.entries.iter().map(|e| e.cycles).sum()
    }

    pub fn count_funct(&self, funct: Funct) -> usize {
        self.entries.iter().filter(|e| e.command.funct == funct).count()
    }
}

const REGFILE_SIZE: usize = 32;

/// The accelerator: 32 wide registers, a word-addressed memory map for
/// LD, the interface FSM phase, and a monotonically increasing cycle
/// counter.
#[derive(Debug, Clone)]
pub struct AcceleratorState {
    regfile: [WideBcd; REGFILE_SIZE],
    mem: BTreeMap<u64, u64>,
    phase: Phase,
    cycle_counter: u64,
}

impl Default for AcceleratorState {
    fn default() -> Self {
        AcceleratorState {
            regfile: [WideBcd::zero(); REGFILE_SIZE],
            mem: BTreeMap::new(),
            phase: Phase::Idle,
            cycle_counter: 0,
        }
    }
}

impl AcceleratorState {
    pub fn new() -> Self {
        AcceleratorState::default()
    }

    pub fn reg(&self, addr: u8) -> &WideBcd {
        &self.regfile[addr as usize % REGFILE_SIZE]
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn busy(&self) -> bool {
        self.phase != Phase::Idle
    }

    pub fn cycle_counter(&self) -> u64 {
        self.cycle_counter
    }

    /// Maps one 64-bit word at a memory address for LD to find.
    pub fn map_memory(&mut self, addr: u64, value: u64) {
        self.mem.insert(addr, value);
    }

    /// Host-side register manipulation used by co-design drivers for the
    /// shift between partial-product additions: the shift belongs to the
    /// software side and is charged through the software cost meter, so
    /// it bypasses the command interface.
    pub fn shift_reg_digits(&mut self, addr: u8, k: usize) {
        let idx = addr as usize % REGFILE_SIZE;
        self.regfile[idx] = bcd_shift_digits(&self.regfile[idx], k);
    }

    /// Clears the register file through the command interface.
    pub fn reset(&mut self, costs: &CostTable) -> u64 {
        let (_, cycles) = self
            .execute(Command::new(Funct::ClrAll), costs)
            .expect("CLR_ALL cannot fail");
        cycles
    }

    /// Decodes and executes one command, advancing the FSM and the cycle
    /// counter. Returns the response (iff `xd`) and the cycles consumed.
    pub fn execute(&mut self, cmd: Command, costs: &CostTable) -> Result<(Option<Response>, u64)> {
        if self.busy() {
            return Err(Error::AcceleratorBusy);
        }
        let exec_cycles = costs.exec_cycles(cmd.funct);
        self.phase = Phase::Decode;
        self.cycle_counter += costs.cmd_latency;
        self.phase = Phase::Execute { remaining: exec_cycles };

        let result = self.perform(&cmd);
        self.cycle_counter += exec_cycles;

        let outcome = match result {
            Ok(data) => {
                let response = if cmd.xd {
                    self.phase = Phase::Respond;
                    self.cycle_counter += costs.resp_latency;
                    Some(Response { rd: cmd.rd, data })
                } else {
                    None
                };
                Ok((response, costs.command_cycles(cmd.funct, cmd.xd)))
            }
            Err(e) => Err(e),
        };
        self.phase = Phase::Idle;
        outcome
    }

    /// Folds `execute` over a command sequence. The first error aborts,
    /// returning the partial trace alongside the failing index.
    pub fn run_trace(
        &mut self,
        cmds: &[Command],
        costs: &CostTable,
    ) -> std::result::Result<CommandTrace, (CommandTrace, usize, Error)> {
        let mut trace = CommandTrace::default();
        for (index, cmd) in cmds.iter().enumerate() {
            match self.execute(*cmd, costs) {
                Ok((response, cycles)) => {
                    trace.entries.push(TraceEntry { command: *cmd, cycles, response });
                }
                Err(e) => return Err((trace, index, e)),
            }
        }
        Ok(trace)
    }

    /// Executes the function itself; returns the 64-bit response payload
    /// (meaningful only when `xd` is set).
    fn perform(&mut self, cmd: &Command) -> Result<u64> {
        let rd = cmd.rd as usize % REGFILE_SIZE;
        match cmd.funct {
            Funct::Wr => {
                self.regfile[rd] = WideBcd::from_word(self.value_operand1(cmd));
                Ok(self.regfile[rd].limb(0))
            }
            Funct::Rd => {
                let source = self.reg(cmd.rs1_addr);
                let limb_index = cmd.rs2_addr as usize;
                if limb_index >= 3 {
                    return Err(Error::Range(format!(
                        "RD limb selector {limb_index} out of range 0..=2"
                    )));
                }
                Ok(source.limb(limb_index))
            }
            Funct::Ld => {
                let addr = self.value_operand1(cmd);
                let value = *self.mem.get(&addr).ok_or(Error::MemoryFault(addr))?;
                self.regfile[rd] = WideBcd::from_word(value);
                Ok(value)
            }
            Funct::Accum => {
                let addend = self.value_operand1(cmd);
                let limbs = self.regfile[rd].limbs();
                let (low, carry0) = limbs[0].overflowing_add(addend);
                let (mid, carry1) = limbs[1].overflowing_add(carry0 as u64);
                let high = limbs[2].wrapping_add(carry1 as u64);
                self.regfile[rd] = WideBcd::from_limbs([low, mid, high]);
                Ok(low)
            }
            Funct::DecCnv => {
                let n = self.value_operand1(cmd);
                self.regfile[rd] = bin_to_bcd(n, 20)?;
                Ok(self.regfile[rd].limb(0))
            }
            Funct::DecAdd => {
                let a = self.wide_operand(cmd.xs1, cmd.rs1_value, cmd.rs1_addr);
                let b = self.wide_operand(cmd.xs2, cmd.rs2_value, cmd.rs2_addr);
                let (sum, _carry) = bcd_cla_add(&a, &b, false)?;
                self.regfile[rd] = sum;
                Ok(sum.limb(0))
            }
            Funct::DecMul => {
                let x = self.wide_operand(cmd.xs1, cmd.rs1_value, cmd.rs1_addr);
                let y = self.wide_operand(cmd.xs2, cmd.rs2_value, cmd.rs2_addr);
                if y.significant_len() > crate::bcd::WORD_DIGITS {
                    return Err(Error::Range(format!(
                        "DEC_MUL multiplier has {} digits, at most 16 supported",
                        y.significant_len()
                    )));
                }
                let mm = gen_multiples(&x)?;
                self.regfile[rd] = accumulate_partials(BcdWord(y.limb(0)), &mm)?;
                Ok(self.regfile[rd].limb(0))
            }
            Funct::DecAccum => {
                let addend = *self.reg(cmd.rs1_addr);
                let (sum, _carry) = bcd_cla_add(&self.regfile[rd], &addend, false)?;
                self.regfile[rd] = sum;
                Ok(sum.limb(0))
            }
            Funct::ClrAll => {
                self.regfile = [WideBcd::zero(); REGFILE_SIZE];
                Ok(0)
            }
        }
    }

    /// First operand as a 64-bit word: the transferred value when xs1 is
    /// set, else the low word of the addressed register.
    fn value_operand1(&self, cmd: &Command) -> u64 {
        if cmd.xs1 {
            cmd.rs1_value
        } else {
            self.reg(cmd.rs1_addr).limb(0)
        }
    }

    /// A wide operand: the transferred word widened, or the full content
    /// of the addressed register.
    fn wide_operand(&self, transferred: bool, value: u64, addr: u8) -> WideBcd {
        if transferred {
            WideBcd::from_word(value)
        } else {
            *self.reg(addr)
        }
    }
}
