#!/usr/bin/env python3
import os
import shlex
import subprocess
import sys

VERBS = ('synth', 'analyze', 'dataset', 'train', 'eval', 'pca', 'repro')
SEEDED_VERBS = ('synth', 'dataset', 'train')


def env_flag(name: str) -> bool:
    return os.getenv(name, 'false').strip().lower() in ('true', '1', 'yes')


def build_command() -> list:
    """Map SQ_* environment variables to main.py flags"""
    command = os.getenv('SQ_COMMAND', '').strip()
    if not command:
        print("Error: Missing required environment variable: SQ_COMMAND")
        sys.exit(1)
    if command not in VERBS:
        print(f"Error: SQ_COMMAND must be one of {', '.join(VERBS)}, got {command}")
        sys.exit(1)

    cmd = ["python", "main.py"]

    # Global options go before the verb
    if config := os.getenv('SQ_CONFIG', '').strip():
        cmd.extend(['--config', config])

    if workers := os.getenv('SQ_WORKERS', '').strip():
        cmd.extend(['--workers', workers])

    if env_flag('SQ_DEBUG'):
        cmd.append('--debug')

    cmd.append(command)

    # Verb options
    seed = os.getenv('SQ_SEED', '').strip()
    if seed and command in SEEDED_VERBS:
        cmd.extend(['--seed', seed])

    if out := os.getenv('SQ_OUT', '').strip():
        cmd.extend(['--output', out])

    cmd.extend(shlex.split(os.getenv('SQ_ARGS', '')))
    return cmd


def main():
    cmd = build_command()

    # Execute command
    try:
        result = subprocess.run(cmd, check=True)
        sys.exit(result.returncode)
    except subprocess.CalledProcessError as e:
        print(f"Command failed with exit code {e.returncode}")
        print(f"Command: {' '.join(cmd)}")
        sys.exit(e.returncode)
    except KeyboardInterrupt:
        print("\nProcess interrupted by user")
        sys.exit(130)
    except Exception as e:
        print(f"Unexpected error: {e}")
        sys.exit(1)


if __name__ == "__main__":
    main()
