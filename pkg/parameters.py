


def getParameters():
	'''
	This function is used to define the analysis parameters.
	This is separated from the main program for ease of reference:
	every limit the enumeration, simplification and kernel stages use
	lives here, and the command line only overrides single keys.
	'''

	  # Global dictionary for acquiring the parameters for an analysis
	globalDictionary = {
		# Todd-Coxeter: most cosets held at once before giving up (Overflow,
		# which is inconclusive and never a proof of infiniteness)
		"maxCosets": 1000000,
		# lookahead sweeps attempted when the table is full before Overflow
		"lookaheadRounds": 3,

		# Tietze: passes (eliminations plus successful substitutions) before
		# the best presentation so far is returned flagged as over budget
		"tietzeBudget": 10000,
		# substring substitution only runs at or below this many relators;
		# eliminations always run
		"substitutionMaxRelators": 200,

		# kernels with more Schreier generators than this skip the
		# simplified-kernel crosscheck (the report says so)
		"kernelTietzeMaxGenerators": 2000,
		"crosscheckKernel": True,

		# where case files live and where analysis sessions are written
		"casesDir": "cases",
		"reportDir": "analysis_reports",

		"logLevel": "INFO",
		}

	globalDictionary = dotdict(globalDictionary) # make the dot notation for dictionary possible


	return globalDictionary

class dotdict(dict):
   """dot.notation access to dictionary attributes"""
   __getattr__ = dict.get
   __setattr__ = dict.__setitem__
   __delattr__ = dict.__delitem__
