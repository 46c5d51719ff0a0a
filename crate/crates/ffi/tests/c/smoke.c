#include <stdio.h>
#include <string.h>
#include "johnson_walk.h"

int main(void) {
    JwInstance *inst = NULL;
    if (jw_instance_generate("element-distinctness", 9, 2, 1, true, &inst) != JW_STATUS_OK) {
        fprintf(stderr, "generate: %s\n", jw_last_error_message());
        return 1;
    }
    JwRunParams params;
    if (jw_default_params(9, 2, &params) != JW_STATUS_OK || params.m != 4) {
        return 2;
    }
    char *json = NULL;
    if (jw_simulate_full(inst, &params, &json) != JW_STATUS_OK) {
        fprintf(stderr, "simulate: %s\n", jw_last_error_message());
        return 3;
    }
    int ok = strstr(json, "\"engine\": \"full\"") != NULL;
    jw_string_free(json);
    jw_instance_free(inst);

    if (jw_spectrum(10, 1, 2, &json) != JW_STATUS_INVALID_ARGUMENT || jw_last_error_message() == NULL) {
        return 4;
    }
    puts(ok ? "ok" : "bad report");
    return ok ? 0 : 5;
}
