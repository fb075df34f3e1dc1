class Stats:

    def __init__(self, mode=None):
        self.mode = mode
        self.nstep = 0
        self.histogram = dict()
        self.nstep5 = 0
        self.ncheck = 0
        self.violations = 0
        self.ret = None
        self.elapsed = None

    def count(self, step):
        self.nstep = self.nstep + 1
        self.histogram[step] = self.histogram.get(step, 0) + 1
        if step == 5:
            self.nstep5 = self.nstep5 + 1

    def __repr__(self):
        return (f"Mode {self.mode}, nstep: {self.nstep}, nstep5: {self.nstep5}, ncheck: {self.ncheck}, "
                f"violations: {self.violations}, ret: {self.ret}.")
