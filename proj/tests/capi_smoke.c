/* Compiled as C: the public header must stay plain C99. */
#include <torusmd.h>

#include <stdio.h>
#include <string.h>

static void count_bytes(const char* chunk, size_t len, void* user) {
    (void)chunk;
    *(size_t*)user += len;
}

int main(void) {
    torusmd_bundle* b = NULL;
    char* json = NULL;
    size_t streamed = 0;
    torusmd_options opts;

    if (torusmd_bundle_create(1, 0, 0, 1, &b) != TORUSMD_NOT_SOL_ERROR || b != NULL) return 1;
    if (strlen(torusmd_last_error()) == 0) return 2;
    if (torusmd_bundle_create(2, 1, 1, 1, &b) != TORUSMD_OK) return 3;

    torusmd_options_init(&opts);
    opts.format = TORUSMD_FORMAT_CSV;
    if (torusmd_verify(b, &opts, &json) != TORUSMD_OK || json == NULL) return 4;
    if (strncmp(json, "name,status,", 12) != 0) return 5;
    torusmd_string_free(json);
    torusmd_bundle_free(b);

    if (torusmd_batch(3, 4, 2, &opts, count_bytes, &streamed) != TORUSMD_OK || streamed == 0) return 6;
    printf("c api smoke test passed (%s)\n", torusmd_version());
    return 0;
}
