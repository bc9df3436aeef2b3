# Tests package untuk PROXPOINT
