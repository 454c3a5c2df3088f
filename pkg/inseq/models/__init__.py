from models.c import C0InSeq, CInSeq, CpInSeq
from models.cg import CgInSeq
from models.counter_set import CounterClass, CounterSet
from models.pga import PgaTerm
from models.thread import ThreadSpec

__all__ = [CInSeq, C0InSeq, CpInSeq, CgInSeq, PgaTerm, ThreadSpec, CounterSet, CounterClass]
