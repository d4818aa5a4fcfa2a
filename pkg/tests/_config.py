import os
import shutil


HY_TRIALS = 100

DATA = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data")
GOLDEN = os.path.join(DATA, "golden")
CORPUS = os.path.join(DATA, "corpus")

SLOW = os.environ.get("RETROFIT_SLOW") == "1"
GXX = shutil.which("g++")
