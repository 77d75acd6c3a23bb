from superber.cli import entry

entry()
