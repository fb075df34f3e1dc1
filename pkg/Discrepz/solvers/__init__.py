from Discrepz.solvers.option import Opt
from Discrepz.solvers.stats import Stats
from Discrepz.solvers.solution import StepRecord, RunResult
from Discrepz.solvers.laesolver import LinearSystem, BoundaryWalk, KernelTracker, kernel_direction, walk_to_boundary
from Discrepz.solvers.cohortsolver import *
from Discrepz.solvers.bfsolver import classic_beck_fiala, classic_bound
