from workbench.cli.commands import analyze, aowf_check, attack, classical, protocol, rsa, runs, zk

COMMAND_MODULES = (classical, analyze, rsa, attack, protocol, zk, aowf_check, runs)
