#include <stdio.h>
#include <string.h>
#include "superpoisson.h"

static const char *P1 =
    "[generators]\nx1 : odd\ny1 : odd\n[bracket]\n{x1, x1} = 0\n{y1, y1} = 0\n{x1, y1} = 1\n";

int main(void) {
    SpSpec *spec = NULL;
    if (sp_spec_parse(P1, &spec) != SP_STATUS_OK) {
        fprintf(stderr, "parse: %s\n", sp_last_error_message());
        return 1;
    }
    if (sp_check(spec, NULL) != SP_STATUS_OK) {
        return 2;
    }
    char *nf = NULL;
    if (sp_normalize(spec, "h(x1)*m(y1)", &nf) != SP_STATUS_OK) {
        return 3;
    }
    printf("%s\n", nf);
    int bad = strcmp(nf, "-1 m(y1)h(x1) + 1") != 0;
    sp_string_free(nf);
    size_t count = 0;
    sp_basis_count(spec, 1, 1, &count);
    printf("%zu\n", count);
    sp_spec_free(spec);
    if (sp_spec_parse("[generators]\nx : sideways\n", &spec) != SP_STATUS_INPUT_ERROR || spec != NULL) {
        return 4;
    }
    return bad ? 5 : 0;
}
