from . import main_entry

main_entry()
