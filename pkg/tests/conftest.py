import sys
import os

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

# verify every Smith normal form while testing
os.environ.setdefault("ODDKH_CHECK_SNF", "1")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: random property sweeps over a few hundred braids")
