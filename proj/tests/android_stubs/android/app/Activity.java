package android.app;

import android.content.Context;
import android.content.Intent;
import android.os.Bundle;
import android.view.View;

public class Activity extends Context {
    public void onCreate(Bundle savedInstanceState) {
    }

    public void setContentView(int layoutResId) {
    }

    public View findViewById(int id) {
        return new View();
    }

    public void startActivity(Intent intent) {
    }

    public Intent getIntent() {
        return new Intent();
    }
}
