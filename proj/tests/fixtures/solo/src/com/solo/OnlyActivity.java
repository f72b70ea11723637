package com.solo.app;

import android.app.Activity;
import android.content.Intent;
import android.os.Bundle;

public class OnlyActivity extends Activity {

    @Override
    public void onCreate(Bundle savedInstanceState) {
        super.onCreate(savedInstanceState);
        Intent loop = new Intent(this, OnlyActivity.class);
        startActivity(loop);
    }
}
