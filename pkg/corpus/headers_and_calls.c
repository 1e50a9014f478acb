#include <stdio.h>
#include <stdlib.h>
#include <string.h>

configure_logging();
install_signal_handlers();
seed_random_pool();
announce_startup();
