from Discrepz.setsystem.setsystem import SetSystem, parse_set_system, verify_coloring
from Discrepz.setsystem.coloring import FloatingColoring, SetStats, set_stats, all_set_stats, discrepancy_of
