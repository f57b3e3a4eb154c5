# symfnef.py — launcher for the symmetric F-nef certifier
"""
    python symfnef.py certify divisor.json --mode all -o cert.json
    python symfnef.py verify cert.json

See src/cli.py for every command.
"""
from src.cli import run

if __name__ == "__main__":
    run()
