#include <stdio.h>
#include <string.h>

#include "quartic_hasse.h"

int main(void) {
    int64_t b[5] = {-1, 17, 89, 257, 769};
    QhCertificate *cert = NULL;
    if (qh_certify(b, NULL, 3, &cert) != QH_STATUS_OK) {
        fprintf(stderr, "certify: %s\n", qh_last_error_message());
        return 1;
    }
    bool agrees = false;
    if (qh_certificate_recheck(cert, &agrees) != QH_STATUS_OK || !agrees) return 2;
    if (!qh_certificate_bitangent_hasse_failure(cert) || !qh_certificate_sdr_hasse_failure(cert)) return 3;
    printf("%s\n", qh_certificate_quartic(cert));
    char *json = qh_certificate_json(cert);
    if (json == NULL || strstr(json, "\"sdr_hasse_failure\": true") == NULL) return 4;
    qh_string_free(json);
    qh_certificate_free(cert);

    int64_t bad[5] = {-1, 5, 89, 257, 769};
    if (qh_certify(bad, NULL, 0, &cert) != QH_STATUS_VALIDATION || cert != NULL) return 5;
    if (qh_last_error_message() == NULL) return 6;
    return 0;
}
