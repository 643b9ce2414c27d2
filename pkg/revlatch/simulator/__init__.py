from revlatch.simulator.simulator import *
