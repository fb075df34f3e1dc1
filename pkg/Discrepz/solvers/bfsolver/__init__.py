from Discrepz.solvers.bfsolver.classic import classic_beck_fiala, classic_bound
