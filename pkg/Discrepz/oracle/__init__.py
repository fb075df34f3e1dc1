from Discrepz.oracle.brute_force import brute_force_discrepancy, brute_force_coloring, DEFAULT_CAP
from Discrepz.oracle.generator import GeneratorSpec, generate, GENERATOR_KINDS
